"""
Backbone shapes and coherence bounds
====================================

Five subgraphs of different sizes are wired through their bridge nodes in
several backbone shapes. Closed forms are compared with the numeric value,
then the best star centre and line ordering are found.
"""
import numpy as np

from netcoherence import (Complete, CompositeSpec, Line, Ring, Star, assemble, coherence_consensus,
                          lower_bound, optimal_line_ordering, optimal_star_center,
                          random_connected_er, summarize, upper_bound)
from netcoherence.composite import (backbone_coherence, backbone_edges, center_out_line_ordering,
                                    line_cross_cost)

rng = np.random.default_rng(1)
subs = [random_connected_er((2, 9), 0.5, rng) for _ in range(5)]
bridges = [int(rng.integers(g.node_count)) for g in subs]
sizes = [g.node_count for g in subs]
print("sizes:", sizes)

for shape in (Star(0), Line((0, 1, 2, 3, 4)), Ring((0, 1, 2, 3, 4)), Complete()):
    spec = CompositeSpec.from_backbone(subs, bridges, backbone_edges(shape, 5))
    closed = backbone_coherence(summarize(spec), shape)
    numeric = coherence_consensus(assemble(spec)[0])
    print(f"{type(shape).__name__:9s} closed {closed:.6f}  numeric {numeric:.6f}")

# the hub of the best star is always the largest subgraph
center = optimal_star_center(sizes)
print("best star centre:", center, "size", sizes[center])

# center-out placement is a heuristic; the exact ordering can differ
for name, order in (("center-out", center_out_line_ordering(sizes)),
                    ("exact", optimal_line_ordering(sizes))):
    spec = CompositeSpec.from_backbone(subs, bridges, backbone_edges(Line(tuple(order)), 5))
    print(f"{name:10s} {order}  H_C {coherence_consensus(assemble(spec)[0]):.6f}")

# only the cross term depends on the ordering; here the heuristic loses
skewed = [11, 7, 1, 13, 1, 7]
for name, order in (("center-out", center_out_line_ordering(skewed)),
                    ("exact", optimal_line_ordering(skewed))):
    print(f"{name:10s} {order}  cross cost {line_cross_cost(skewed, order):.1f}")

# bounds for n equal subgraphs of m nodes
for n, m in ((2, 2), (3, 4), (6, 6)):
    lb = lower_bound(n, m)
    print(f"n={n} m={m}: lower {lb.corrected:.4f} (doubled backbone term {lb.doubled_backbone:.4f}),"
          f" upper {upper_bound(n, m):.4f}")
