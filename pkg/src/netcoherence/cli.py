"""Command-line entry point: ``netcoherence <verb> [options]``.

Exit codes: 0 success, 1 input error, 2 numerical failure, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import experiments as ex
from .coherence import (coherence_consensus, coherence_stubborn, resistance_centralities,
                        total_effective_resistance)
from .exceptions import (BudgetExceededError, CoherenceError, DisconnectedGraphError,
                         InvalidGraphError, NotPositiveDefiniteError)
from .graph import assemble
from .io import looks_like_composite, read_composite, read_graph, read_profile
from .simulate import (SimulationConfig, simulate_consensus_coherence,
                       simulate_stubborn_coherence)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_BUDGET = 0, 1, 2, 3


def _load_graph(path):
    if looks_like_composite(path):
        return assemble(read_composite(path))[0]
    return read_graph(path)


def cmd_coherence(args) -> int:
    g = _load_graph(args.graph)
    d = read_profile(args.profile) if args.profile else None
    if d is not None and len(d) != g.node_count:
        raise InvalidGraphError(f"{args.profile}: {len(d)} values for {g.node_count} nodes")
    print(f"nodes: {g.node_count}  edges: {g.edge_count}")
    status = EXIT_OK
    if g.is_connected():
        print(f"H_C = {coherence_consensus(g):.4f}")
        print(f"Omega = {total_effective_resistance(g):.4f}")
        cent = resistance_centralities(g)
        print("resistance centrality:")
        for v, c in enumerate(cent):
            print(f"  {g.label(v)}: {c:.4f}")
    else:
        print(f"coherence undefined: graph disconnected ({len(g.components())} components)")
        status = EXIT_NUMERIC
    if d is not None:
        try:
            print(f"H_S = {coherence_stubborn(g, d):.4f}")
            status = EXIT_OK
        except NotPositiveDefiniteError as exc:
            print(f"H_S undefined: {exc}")
            status = EXIT_NUMERIC
    return status


def _experiment_config(args, name):
    return ex.load_config(name, args.config, seed=args.seed, out=args.out, d_mode=args.d_mode,
                          trials=args.trials, k_max=args.k_max, er_p=args.er_p,
                          size_min=args.size_min, size_max=args.size_max,
                          workers=args.workers, budget=getattr(args, "budget", None))


def cmd_between_vs_within(args) -> int:
    cfg = _experiment_config(args, "between-vs-within")
    rows = ex.between_vs_within(cfg)
    path = ex.write_csv(rows, Path(cfg.out) / "between_vs_within.csv", cfg.header())
    print(ex.rows_to_csv(rows), end="")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_greedy_vs_optimal(args) -> int:
    cfg = _experiment_config(args, "greedy-vs-optimal")
    rows = ex.greedy_vs_optimal(cfg)
    path = ex.write_csv(rows, Path(cfg.out) / "greedy_vs_optimal.csv", cfg.header())
    print(ex.rows_to_csv(rows), end="")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_worked_example(args) -> int:
    rep = ex.worked_example()
    print(f"R_1 = {rep['R_1']:.4f}")
    print(f"R_2 = {rep['R_2']:.4f}")
    print(f"C_1(l_1) = {rep['C_1']:.4f}")
    print(f"C_2(l_2) = {rep['C_2']:.4f}")
    print(f"H_C(G) = {rep['H_C']:.4f}")
    print("k | greedy edges | H_S | optimal edges | H_S*")
    rows = ex.worked_example_rows(rep)
    for r in rows:
        print(f"{r['k']} | {r['greedy_edges']} | {r['greedy_h_s']:.4f} | "
              f"{r['optimal_edges']} | {r['optimal_h_s']:.4f}")
    path = ex.write_csv(rows, Path(args.out) / "worked_example.csv",
                        "# experiment=paper-example\n# d-mode=identity\n")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    rep = ex.bounds_report(args.n, args.m, samples=args.samples, seed=args.seed or 0)
    print(f"n = {rep['n']}, m = {rep['m']}")
    print(f"lower bound (corrected) = {rep['lower_corrected']:.4f}")
    flag = "  [exceeds attainable minimum]" if (
        "complete_composite" in rep and rep["lower_doubled"] > rep["complete_composite"] + 1e-9) else ""
    print(f"lower bound (doubled backbone term) = {rep['lower_doubled']:.4f}{flag}")
    print(f"upper bound = {rep['upper']:.4f}")
    if "complete_composite" in rep:
        print(f"complete/complete composite H_C = {rep['complete_composite']:.4f}")
        print(f"path/line composite H_C = {rep['line_composite']:.4f}")
    if "samples" in rep:
        verdict = "holds" if rep["sandwich_holds"] else "VIOLATED"
        print(f"sandwich over {rep['samples']} random composites: {verdict} "
              f"(min {rep['sample_min']:.4f}, max {rep['sample_max']:.4f})")
        if not rep["sandwich_holds"]:
            return EXIT_NUMERIC
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = _load_graph(args.graph)
    cfg = SimulationConfig(args.dt, args.burn_in, args.sample_time, args.trials or 16,
                           args.seed or 0)
    t0 = time.perf_counter()
    if args.profile:
        est = simulate_stubborn_coherence(g, read_profile(args.profile), cfg)
        name = "H_S"
    else:
        est = simulate_consensus_coherence(g, cfg)
        name = "H_C"
    elapsed = time.perf_counter() - t0
    print(f"{name} analytic = {est.analytic:.4f}")
    print(f"{name} estimate = {est.value:.4f} +/- {est.stderr:.4f}")
    print(f"z = {est.z_score:.3f}  ({elapsed:.1f} s, dt = {est.config.time_step:.3g})")
    if args.out:
        path = Path(args.out) / "simulate.csv"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(est.to_csv())
        print(f"wrote {path}")
    return EXIT_OK


def _add_experiment_flags(p):
    p.add_argument("--config", help="key = value file; keys match flag names")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--d-mode", choices=("identity", "random", "both"))
    p.add_argument("--trials", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--er-p", type=float)
    p.add_argument("--size-min", type=int)
    p.add_argument("--size-max", type=int)
    p.add_argument("--workers", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netcoherence", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="H_C, H_S, Omega and centralities of a graph file")
    p.add_argument("graph")
    p.add_argument("--profile", help="stubbornness profile file")
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("between-vs-within", help="greedy edges between vs within subgraphs")
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_between_vs_within)

    p = sub.add_parser("greedy-vs-optimal", help="greedy vs exhaustive edge sets")
    _add_experiment_flags(p)
    p.add_argument("--budget", type=int, help="max subsets enumerated per instance")
    p.set_defaults(func=cmd_greedy_vs_optimal)

    p = sub.add_parser("paper-example", help="two-subgraph worked example and edge table")
    p.add_argument("--out", default="results")
    p.set_defaults(func=cmd_worked_example)

    p = sub.add_parser("bounds", help="coherence bounds for n subgraphs of size m")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="Monte Carlo check of H_C or H_S")
    p.add_argument("graph")
    p.add_argument("--profile")
    p.add_argument("--dt", type=float)
    p.add_argument("--burn-in", type=float)
    p.add_argument("--sample-time", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidGraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DisconnectedGraphError, CoherenceError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
