"""
Closed-form coherence of bridge-node composites.

When subgraph ``G_i`` attaches to the rest of the network only through its
bridge node ``l_i``, the consensus coherence of the composite splits into
per-subgraph terms and one backbone term::

    H_C(G) = 1/(2N) * ( sum_i 2 n_i H_C(G_i)
                        + sum_{i<j} n_i n_j r(l_i, l_j)
                        + sum_i (N - n_i) C_i(l_i) )

with ``r`` the backbone resistance distance and ``C_i`` the resistance
centrality inside ``G_i``. Backbone-specific helpers below only differ in
how ``r(l_i, l_j)`` is obtained.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .coherence import (argmin_lowest_index, coherence_consensus, resistance_centrality,
                        resistance_matrix)
from .exceptions import InvalidGraphError
from .graph import CompositeSpec, Graph, complete_graph, path_graph


@dataclass(frozen=True)
class SubgraphSummary:
    """The three numbers a subgraph contributes: size, H_C and bridge centrality."""

    size: int
    coherence: float
    bridge_centrality: float

    def __post_init__(self):
        if self.size < 1:
            raise InvalidGraphError("subgraph size must be >= 1")
        if self.coherence < 0 or self.bridge_centrality < 0:
            raise InvalidGraphError("coherence and centrality must be non-negative")

    @classmethod
    def from_graph(cls, g: Graph, bridge: int) -> "SubgraphSummary":
        return cls(g.node_count, coherence_consensus(g), resistance_centrality(g, bridge))

    @property
    def effective_resistance(self) -> float:
        return 2.0 * self.size * self.coherence


def summarize(spec: CompositeSpec) -> list[SubgraphSummary]:
    if spec.bridge_nodes is None:
        raise InvalidGraphError("summaries need bridge nodes")
    return [SubgraphSummary.from_graph(g, b) for g, b in zip(spec.subgraphs, spec.bridge_nodes)]


def bridged_composite_coherence(summaries: Sequence[SubgraphSummary], backbone_resistances) -> float:
    """Composite consensus coherence from subgraph summaries.

    ``backbone_resistances[i, j]`` is the resistance distance between the
    bridge nodes of subgraphs ``i`` and ``j`` in the backbone graph.
    """
    n = len(summaries)
    if n < 1:
        raise InvalidGraphError("need at least one subgraph")
    R = np.asarray(backbone_resistances, dtype=float)
    if R.shape != (n, n):
        raise ValueError(f"resistance matrix shape {R.shape} does not match {n} subgraphs")
    sizes = np.array([s.size for s in summaries], dtype=float)
    N = sizes.sum()
    internal = sum(s.effective_resistance for s in summaries)
    cross = float(np.sum(np.triu(np.outer(sizes, sizes) * R, 1)))
    bridge = sum((N - s.size) * s.bridge_centrality for s in summaries)
    return (internal + cross + bridge) / (2.0 * N)


# --- backbone topologies -------------------------------------------------

@dataclass(frozen=True)
class Tree:
    edges: tuple

    def resistances(self, n):
        return tree_distances(n, self.edges)


@dataclass(frozen=True)
class Star:
    center: int

    def resistances(self, n):
        return tree_distances(n, star_edges(n, self.center))


@dataclass(frozen=True)
class Line:
    ordering: tuple

    def resistances(self, n):
        pos = _positions(self.ordering, n)
        return np.abs(pos[:, None] - pos[None, :]).astype(float)


@dataclass(frozen=True)
class Ring:
    ordering: tuple

    def resistances(self, n):
        if n < 3:
            raise InvalidGraphError("ring backbone needs n >= 3")
        pos = _positions(self.ordering, n)
        k = np.abs(pos[:, None] - pos[None, :])
        return k * (n - k) / n


@dataclass(frozen=True)
class Complete:
    def resistances(self, n):
        if n < 2:
            raise InvalidGraphError("complete backbone needs n >= 2")
        R = np.full((n, n), 2.0 / n)
        np.fill_diagonal(R, 0.0)
        return R


@dataclass(frozen=True)
class General:
    edges: tuple

    def resistances(self, n):
        return resistance_matrix(Graph(n, self.edges))


def backbone_edges(kind, n: int) -> list[tuple[int, int]]:
    """Edge list (between subgraph indices) realising a backbone description."""
    if isinstance(kind, (Tree, General)):
        return [tuple(e) for e in kind.edges]
    if isinstance(kind, Star):
        return star_edges(n, kind.center)
    if isinstance(kind, Line):
        o = list(kind.ordering)
        return [(o[p], o[p + 1]) for p in range(n - 1)]
    if isinstance(kind, Ring):
        o = list(kind.ordering)
        return [(o[p], o[(p + 1) % n]) for p in range(n)]
    if isinstance(kind, Complete):
        return list(combinations(range(n), 2))
    raise TypeError(f"unknown backbone kind {kind!r}")


def backbone_coherence(summaries, kind) -> float:
    return bridged_composite_coherence(summaries, kind.resistances(len(summaries)))


def star_edges(n: int, center: int) -> list[tuple[int, int]]:
    return [(center, i) for i in range(n) if i != center]


def _positions(ordering, n) -> np.ndarray:
    order = [int(i) for i in ordering]
    if sorted(order) != list(range(n)):
        raise InvalidGraphError(f"ordering {order} is not a permutation of 0..{n - 1}")
    pos = np.empty(n, dtype=int)
    pos[order] = np.arange(n)
    return pos


def tree_distances(n: int, edges) -> np.ndarray:
    """Hop distances in a spanning tree; rejects cycles and forests."""
    edges = [tuple(int(x) for x in e) for e in edges]
    if len(edges) != n - 1:
        raise InvalidGraphError(f"a spanning tree on {n} nodes has {n - 1} edges, got {len(edges)}")
    g = Graph(n, edges)
    if g.edge_count != n - 1 or not g.is_connected():
        raise InvalidGraphError("backbone edges do not form a spanning tree")
    nbrs = [[] for _ in range(n)]
    for u, v in g.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    D = np.zeros((n, n))
    for src in range(n):
        seen = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for x in frontier:
                for y in nbrs[x]:
                    if y not in seen:
                        seen[y] = seen[x] + 1
                        nxt.append(y)
            frontier = nxt
        for node, dist in seen.items():
            D[src, node] = dist
    return D


def tree_backbone_coherence(summaries, tree_edges) -> float:
    """Tree backbone: resistance equals hop distance between bridge nodes."""
    return bridged_composite_coherence(summaries, tree_distances(len(summaries), tree_edges))


def line_backbone_coherence(summaries, ordering) -> float:
    """``ordering[p]`` is the subgraph placed at position ``p`` along the line."""
    return backbone_coherence(summaries, Line(tuple(ordering)))


def ring_backbone_coherence(summaries, ordering) -> float:
    return backbone_coherence(summaries, Ring(tuple(ordering)))


def complete_backbone_coherence(summaries) -> float:
    return backbone_coherence(summaries, Complete())


# --- optimal arrangements ------------------------------------------------

def optimal_star_center(sizes: Sequence[int]) -> int:
    """Index of a largest subgraph (lowest index on ties)."""
    if len(sizes) < 2:
        raise InvalidGraphError("need at least two subgraphs")
    return int(np.argmax(np.asarray(sizes)))


def line_cross_cost(sizes, ordering) -> float:
    """``sum_{i<j} |pos_i - pos_j| n_i n_j``: the only ordering-dependent term."""
    s = np.asarray(sizes, dtype=float)
    pos = _positions(ordering, len(s))
    return float(np.sum(np.triu(np.abs(pos[:, None] - pos[None, :]) * np.outer(s, s), 1)))


def center_out_line_ordering(sizes: Sequence[int]) -> list[int]:
    """Largest subgraph at position ``n // 2``, the rest alternating outward.

    This is the simple center-out heuristic; it is optimal for many size
    lists but not all. :func:`optimal_line_ordering` is exact.
    """
    n = len(sizes)
    if n < 2:
        raise InvalidGraphError("need at least two subgraphs")
    by_size = sorted(range(n), key=lambda i: (-sizes[i], i))
    c = n // 2
    slots = [c]
    step = 1
    while len(slots) < n:
        for p in (c + step, c - step):
            if 0 <= p < n and len(slots) < n:
                slots.append(p)
        step += 1
    order = [0] * n
    for i, p in zip(by_size, slots):
        order[p] = i
    return order


def optimal_line_ordering(sizes: Sequence[int]) -> list[int]:
    """Exact minimiser of the line cross term; lexicographically smallest on ties.

    The cross term equals the sum over the ``n - 1`` gaps of
    ``S_left * (N - S_left)``, so it depends only on which subgraphs sit left
    of each gap. A dynamic program over prefix sets finds the optimum in
    ``O(2^n n)``.
    """
    n = len(sizes)
    if n < 2:
        raise InvalidGraphError("need at least two subgraphs")
    if n > 20:
        raise InvalidGraphError("exact line ordering supports at most 20 subgraphs")
    sizes = [float(s) for s in sizes]
    total = sum(sizes)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def mass(mask):
        return sum(sizes[i] for i in range(n) if mask >> i & 1)

    @lru_cache(maxsize=None)
    def rest(mask):
        # cheapest arrangement of the nodes not in mask, given mask is the prefix
        if mask == full:
            return 0.0
        gap = mass(mask) * (total - mass(mask)) if mask else 0.0
        return gap + min(rest(mask | 1 << i) for i in range(n) if not mask >> i & 1)

    order = []
    mask = 0
    while mask != full:
        options = [i for i in range(n) if not mask >> i & 1]
        vals = [rest(mask | 1 << i) for i in options]
        i = options[argmin_lowest_index(vals, rtol=1e-12)]
        order.append(i)
        mask |= 1 << i
    return order


# --- bounds for uniform-size composites ----------------------------------

@dataclass(frozen=True)
class LowerBound:
    corrected: float
    doubled_backbone: float


def lower_bound(n: int, m: int) -> LowerBound:
    """Lower bound on H_C for ``n`` subgraphs of ``m`` nodes each.

    Attained by complete subgraphs on a complete backbone. ``corrected``
    carries the backbone term ``m^2 (n - 1)``; ``doubled_backbone`` keeps the
    factor-two version ``2 m^2 (n - 1)``, which overshoots the attainable
    minimum (e.g. 1.75 vs 1.25 at ``n = m = 2``).
    """
    if n < 2 or m < 1:
        raise InvalidGraphError("need n >= 2 and m >= 1")
    N = n * m
    rest = n * (m - 1) + 2 * n * (n - 1) * (m - 1)
    return LowerBound((rest + m * m * (n - 1)) / (2 * N),
                      (rest + 2 * m * m * (n - 1)) / (2 * N))


def upper_bound(n: int, m: int) -> float:
    """Upper bound on H_C, attained by path subgraphs bridged at an end on a line backbone."""
    if n < 2 or m < 1:
        raise InvalidGraphError("need n >= 2 and m >= 1")
    N = n * m
    return (n * m * (m * m - 1) / (12 * N)
            + n * m * m * (n * n - 1) / (12 * N)
            + n * m * m * (m - 1) * (n - 1) / (4 * N))


def complete_extremal_spec(n: int, m: int) -> CompositeSpec:
    return CompositeSpec.from_backbone([complete_graph(m)] * n, [0] * n,
                                       list(combinations(range(n), 2)))


def line_extremal_spec(n: int, m: int) -> CompositeSpec:
    return CompositeSpec.from_backbone([path_graph(m)] * n, [0] * n,
                                       [(i, i + 1) for i in range(n - 1)])
