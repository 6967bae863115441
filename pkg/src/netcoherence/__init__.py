"""Coherence analysis and connecting-edge design for composite networks."""
from .coherence import (coherence_consensus, coherence_stubborn, grounded_laplacian_coherence,
                        min_centrality_node, pseudo_inverse, pseudo_inverse_trace,
                        resistance_centralities, resistance_centrality, resistance_matrix,
                        total_effective_resistance)
from .composite import (Complete, General, Line, Ring, Star, SubgraphSummary, Tree,
                        backbone_coherence, bridged_composite_coherence,
                        complete_backbone_coherence, line_backbone_coherence, lower_bound,
                        optimal_line_ordering, optimal_star_center, ring_backbone_coherence,
                        summarize, tree_backbone_coherence, upper_bound)
from .exceptions import (BudgetExceededError, CoherenceError, DisconnectedGraphError,
                         GenerationError, InvalidEdgeError, InvalidGraphError,
                         NotPositiveDefiniteError, UnstableStepError)
from .graph import (CompositeSpec, Graph, StubbornnessProfile, assemble, complete_graph,
                    cycle_graph, edge_laplacian, erdos_renyi, laplacian, path_graph,
                    random_connected_er, random_stubbornness, star_graph)
from .selection import (CandidatePolicy, SelectionResult, evaluate_candidate, greedy_optimal_ratio,
                        greedy_select, optimal_select)
from .simulate import SimulationConfig, simulate_consensus_coherence, simulate_stubborn_coherence

__version__ = "0.1.0"
