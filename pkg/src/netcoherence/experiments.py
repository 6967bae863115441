"""
Reproducible experiment drivers.

Each driver is a pure function of an :class:`ExperimentConfig`. Trial ``t``
draws everything from ``default_rng(seed + t)``: first the two subgraphs,
then (for the random mode) the stubbornness profile, so both profile modes
see the same graphs. Rows are assembled in trial order, so output does not
depend on the number of workers.
"""
from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from functools import partial
from pathlib import Path

import numpy as np

from .coherence import (coherence_consensus, resistance_centrality, total_effective_resistance)
from .composite import (complete_extremal_spec, line_extremal_spec, lower_bound, upper_bound)
from .exceptions import BudgetExceededError, FormatError, GenerationError
from .graph import (DEFAULT_ER_P, CompositeSpec, Graph, StubbornnessProfile, assemble,
                    random_bridge_composite, random_connected_er, random_stubbornness)
from .io import read_key_values
from .selection import (CandidatePolicy, DEFAULT_BUDGET, candidate_edges, greedy_select,
                        greedy_optimal_ratio, optimal_select)

logger = logging.getLogger(__name__)

D_MODES = ("identity", "random")


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "between-vs-within"
    size_min: int = 8
    size_max: int = 15
    er_p: float = DEFAULT_ER_P
    d_mode: str = "both"
    trials: int = 20
    k_max: int = 10
    seed: int = 0
    out: str = "results"
    workers: int = 1
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.size_min < 1 or self.size_max < self.size_min:
            raise ValueError(f"bad size range [{self.size_min}, {self.size_max}]")
        if not 0.0 < self.er_p <= 1.0:
            raise ValueError(f"er-p must lie in (0, 1], got {self.er_p}")
        if self.d_mode not in D_MODES + ("both",):
            raise ValueError(f"d-mode must be identity, random or both, got {self.d_mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.k_max < 1:
            raise ValueError("k-max must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def modes(self) -> tuple[str, ...]:
        return D_MODES if self.d_mode == "both" else (self.d_mode,)

    def header(self) -> str:
        return "".join(f"# {f.name.replace('_', '-')}={getattr(self, f.name)}\n"
                       for f in fields(self) if f.name not in ("out", "workers"))


DEFAULTS = {
    "between-vs-within": ExperimentConfig("between-vs-within", 8, 15, trials=20, k_max=10),
    "greedy-vs-optimal": ExperimentConfig("greedy-vs-optimal", 4, 8, trials=15, k_max=3),
}


def load_config(experiment: str, path=None, **overrides) -> ExperimentConfig:
    """Defaults for ``experiment``, then the key-value file, then ``overrides``.

    ``None`` overrides are ignored so argparse namespaces pass straight in.
    """
    cfg = DEFAULTS[experiment]
    types = {f.name: f.type for f in fields(ExperimentConfig)}
    values = {}
    if path is not None:
        for key, (raw, where) in read_key_values(path).items():
            name = key.replace("-", "_")
            if name not in types or name == "experiment":
                raise FormatError(f"{where}: unknown config key {key!r}")
            conv = {"int": int, "float": float}.get(types[name], str)
            try:
                values[name] = conv(raw)
            except ValueError:
                raise FormatError(f"{where}: {key} = {raw!r} is not a valid {types[name]}") from None
    values.update({k.replace("-", "_"): v for k, v in overrides.items() if v is not None})
    return replace(cfg, **values)


def _profile(mode, n, groups, rng, max_tries=1000):
    if mode == "identity":
        return StubbornnessProfile.identity(n)
    for _ in range(max_tries):
        d = random_stubbornness(n, rng)
        if d.is_valid_for(groups):
            return d
    raise GenerationError("could not draw a profile with a stubborn node in every subgraph")


def _two_subgraphs(cfg, rng):
    g1 = random_connected_er((cfg.size_min, cfg.size_max), cfg.er_p, rng)
    g2 = random_connected_er((cfg.size_min, cfg.size_max), cfg.er_p, rng)
    g, _ = assemble(CompositeSpec((g1, g2)))
    return g


def _between_within_trial(cfg: ExperimentConfig, t: int):
    seed = cfg.seed + t
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        g = _two_subgraphs(cfg, rng)
        if len(candidate_edges(g, CandidatePolicy.WITHIN)) >= cfg.k_max:
            break
    else:
        raise GenerationError(f"seed {seed}: subgraphs too dense for k-max={cfg.k_max} within edges")
    out = {}
    for mode in cfg.modes:
        d = _profile(mode, g.node_count, g.subgraph_nodes(), rng)
        between = greedy_select(g, d, policy=CandidatePolicy.BETWEEN, k=cfg.k_max, seed=seed)
        within = greedy_select(g, d, policy=CandidatePolicy.WITHIN, k=cfg.k_max, seed=seed)
        out[mode] = (between.coherence_trace, within.coherence_trace)
    return out


def _map_trials(fn, cfg):
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            return list(pool.map(partial(fn, cfg), range(cfg.trials)))
    return [fn(cfg, t) for t in range(cfg.trials)]


def between_vs_within(cfg: ExperimentConfig) -> list[dict]:
    """Mean greedy ``H_S`` curves when edges go between vs. within two ER subgraphs.

    One row per ``(d_mode, k)``, ``k = 0..k_max``; ``k = 0`` is the shared
    starting value.
    """
    results = _map_trials(_between_within_trial, cfg)
    rows = []
    for mode in cfg.modes:
        b = np.array([r[mode][0] for r in results])
        w = np.array([r[mode][1] for r in results])
        for k in range(cfg.k_max + 1):
            rows.append({"k": k, "mean_h_s_between": float(b[:, k].mean()),
                         "mean_h_s_within": float(w[:, k].mean()), "d_mode": mode})
    return rows


def _greedy_optimal_trial(cfg: ExperimentConfig, t: int):
    seed = cfg.seed + t
    rng = np.random.default_rng(seed)
    g = _two_subgraphs(cfg, rng)
    out = {}
    for mode in cfg.modes:
        d = _profile(mode, g.node_count, g.subgraph_nodes(), rng)
        ratios = {}
        for k in range(1, cfg.k_max + 1):
            try:
                ratios[k] = greedy_optimal_ratio(g, d, policy=CandidatePolicy.ALL, k=k,
                                                 budget=cfg.budget)
            except BudgetExceededError as exc:
                logger.warning("seed %d, d-mode %s, k=%d skipped: %s", seed, mode, k, exc)
        out[mode] = ratios
    return out


def greedy_vs_optimal(cfg: ExperimentConfig) -> list[dict]:
    """Greedy-to-optimal ``H_S`` ratio per ``k``, averaged over trials."""
    results = _map_trials(_greedy_optimal_trial, cfg)
    rows = []
    for mode in cfg.modes:
        for k in range(1, cfg.k_max + 1):
            vals = [r[mode][k] for r in results if k in r[mode]]
            rows.append({"k": k,
                         "mean_ratio": float(np.mean(vals)) if vals else float("nan"),
                         "max_ratio": float(np.max(vals)) if vals else float("nan"),
                         "trials": len(vals), "d_mode": mode})
    return rows


def rows_to_csv(rows: list[dict], header: str = "") -> str:
    buf = io.StringIO()
    buf.write(header)
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return buf.getvalue()


def write_csv(rows, path, header="") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(rows_to_csv(rows, header))
    return path


# --- worked example ------------------------------------------------------

def worked_example_subgraphs() -> tuple[Graph, Graph]:
    """Path 1-2-3 and the 4-node graph on 4..7 with edges 45, 46, 47, 56."""
    g1 = Graph(3, [(0, 1), (1, 2)], node_labels=(1, 2, 3))
    g2 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)], node_labels=(4, 5, 6, 7))
    return g1, g2


def worked_example_spec() -> CompositeSpec:
    g1, g2 = worked_example_subgraphs()
    return CompositeSpec((g1, g2), (((0, 1), (1, 0)),), bridge_nodes=(1, 0))


def worked_example(k_max: int = 3) -> dict:
    """Resistances, centralities and coherence of the two-subgraph example,
    plus greedy and exhaustive connecting-edge sets under ``D = I``."""
    g1, g2 = worked_example_subgraphs()
    spec = worked_example_spec()
    composite, _ = assemble(spec)
    disjoint, _ = assemble(CompositeSpec((g1, g2)))
    d = StubbornnessProfile.identity(disjoint.node_count)
    greedy = greedy_select(disjoint, d, policy=CandidatePolicy.BETWEEN, k=k_max, verify=True)
    table = []
    for k in range(1, k_max + 1):
        best = optimal_select(disjoint, d, policy=CandidatePolicy.BETWEEN, k=k)
        table.append({
            "k": k,
            "greedy_edges": [(disjoint.label(u), disjoint.label(v)) for u, v in greedy.chosen_edges[:k]],
            "greedy_h_s": greedy.coherence_trace[k],
            "optimal_edges": best.labelled_edges(disjoint),
            "optimal_h_s": best.final_coherence,
        })
    return {
        "R_1": total_effective_resistance(g1),
        "R_2": total_effective_resistance(g2),
        "C_1": resistance_centrality(g1, spec.bridge_nodes[0]),
        "C_2": resistance_centrality(g2, spec.bridge_nodes[1]),
        "H_C": coherence_consensus(composite),
        "table": table,
        "greedy": greedy,
    }


def _edges_str(edges):
    return " ".join(f"({u},{v})" for u, v in edges)


def worked_example_rows(report: dict) -> list[dict]:
    return [{"k": r["k"], "greedy_edges": _edges_str(r["greedy_edges"]), "greedy_h_s": r["greedy_h_s"],
             "optimal_edges": _edges_str(r["optimal_edges"]), "optimal_h_s": r["optimal_h_s"]}
            for r in report["table"]]


# --- bounds --------------------------------------------------------------

def bounds_report(n: int, m: int, samples: int = 200, seed: int = 0,
                  max_numeric_nodes: int = 400) -> dict:
    """Bounds for ``n`` subgraphs of size ``m`` with numeric extremal composites.

    For ``n * m <= max_numeric_nodes`` the two extremal composites are
    assembled and evaluated, and ``samples`` random bridge-node composites
    with uniform size ``m`` are checked against the bounds.
    """
    lo = lower_bound(n, m)
    report = {"n": n, "m": m, "lower_corrected": lo.corrected, "lower_doubled": lo.doubled_backbone,
              "upper": upper_bound(n, m)}
    if n * m > max_numeric_nodes:
        return report
    report["complete_composite"] = coherence_consensus(assemble(complete_extremal_spec(n, m))[0])
    report["line_composite"] = coherence_consensus(assemble(line_extremal_spec(n, m))[0])
    rng = np.random.default_rng(seed)
    values = []
    for _ in range(samples):
        spec = random_bridge_composite([m] * n, rng, p=float(rng.uniform(0.2, 1.0)),
                                       backbone_extra_p=float(rng.uniform(0.0, 1.0)))
        values.append(coherence_consensus(assemble(spec)[0]))
    if values:
        slack = 1e-9
        report["samples"] = len(values)
        report["sample_min"] = min(values)
        report["sample_max"] = max(values)
        report["sandwich_holds"] = (min(values) >= lo.corrected - slack
                                    and max(values) <= report["upper"] + slack)
    return report
