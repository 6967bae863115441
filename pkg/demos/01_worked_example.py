"""
Coherence of a small composite network
======================================

Two subgraphs, a path on nodes 1-2-3 and a four-node graph on 4..7, are
joined by a single edge between their bridge nodes 2 and 4.
"""
import numpy as np

from netcoherence import (CompositeSpec, Graph, assemble, coherence_consensus, laplacian,
                          resistance_centrality, total_effective_resistance)
from netcoherence.composite import SubgraphSummary, bridged_composite_coherence

g1 = Graph(3, [(0, 1), (1, 2)], node_labels=(1, 2, 3))
g2 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)], node_labels=(4, 5, 6, 7))

# total effective resistance and the bridge nodes' resistance centrality
print("R_1 =", total_effective_resistance(g1))
print("R_2 =", total_effective_resistance(g2))
print("C_1(2) =", resistance_centrality(g1, 1))
print("C_2(4) =", resistance_centrality(g2, 0))

spec = CompositeSpec((g1, g2), (((0, 1), (1, 0)),), bridge_nodes=(1, 0))
g, index = assemble(spec)
print("global index of (subgraph 1, node 0):", index[1, 0])

# the composite value straight from the Laplacian spectrum
print("H_C numeric =", coherence_consensus(g))
print("half trace of pinv(L) =", 0.5 * np.trace(np.linalg.pinv(laplacian(g))))

# and from the per-subgraph summaries alone
summaries = [SubgraphSummary.from_graph(g1, 1), SubgraphSummary.from_graph(g2, 0)]
print("H_C from summaries =", bridged_composite_coherence(summaries, [[0, 1], [1, 0]]))
