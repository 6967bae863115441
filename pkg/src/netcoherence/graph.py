"""
Graph representation, Laplacians, composite assembly and random instances.

Nodes are 0-based integers. Edges are stored as sorted ``(u, v)`` pairs with
``u < v``, so ``(u, v)`` and ``(v, u)`` describe the same edge. All types are
immutable; "modifying" a graph returns a new one.

A composite graph is built from disjoint subgraphs by concatenating them in
list order: local node ``k`` of subgraph ``i`` becomes global node
``offset(i) + k``. This keeps the block structure of the Laplacian literal::

    L = blockdiag(L_1, ..., L_n) + sum_{e in E_con} L_e
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import GenerationError, InvalidEdgeError, InvalidGraphError

Edge = tuple[int, int]

DEFAULT_ER_P = 0.3


def normalize_edge(u, v) -> Edge:
    u, v = int(u), int(v)
    if u == v:
        raise InvalidEdgeError(f"self-loop ({u}, {u}) is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with unit edge weights.

    Parameters
    ----------
    node_count : int
        Number of nodes, ``>= 1``.
    edges : iterable of pairs
        Node-index pairs. Orientation and duplicates are ignored.
    node_labels : sequence, optional
        Stable external identifiers, one per node (used for reporting only).
    partition : sequence of int, optional
        Subgraph index of each node. Set by :func:`assemble` so candidate
        policies stay computable after assembly.
    """

    node_count: int
    edges: frozenset = frozenset()
    node_labels: tuple | None = None
    partition: tuple | None = None

    def __post_init__(self):
        n = int(self.node_count)
        if n < 1:
            raise InvalidGraphError(f"node_count must be >= 1, got {n}")
        object.__setattr__(self, "node_count", n)
        edges = set()
        for e in self.edges:
            u, v = normalize_edge(*e)
            if u < 0 or v >= n:
                raise InvalidEdgeError(f"edge ({u}, {v}) out of range for {n} nodes")
            edges.add((u, v))
        object.__setattr__(self, "edges", frozenset(edges))
        if self.node_labels is not None:
            labels = tuple(self.node_labels)
            if len(labels) != n:
                raise InvalidGraphError("node_labels must have one entry per node")
            object.__setattr__(self, "node_labels", labels)
        if self.partition is not None:
            part = tuple(int(p) for p in self.partition)
            if len(part) != n:
                raise InvalidGraphError("partition must have one entry per node")
            object.__setattr__(self, "partition", part)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u, v) -> bool:
        return normalize_edge(u, v) in self.edges

    def label(self, node: int):
        return node if self.node_labels is None else self.node_labels[node]

    def index_of(self, label) -> int:
        if self.node_labels is None:
            return int(label)
        return self.node_labels.index(label)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.node_count, dtype=int)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.node_count, self.node_count))
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1.0
        return A

    def components(self) -> list[list[int]]:
        """Connected components as sorted node lists, ordered by smallest node."""
        n = self.node_count
        if self.edges:
            rows, cols = np.array(sorted(self.edges)).T
        else:
            rows = cols = np.array([], dtype=int)
        adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        _, labels = connected_components(adj, directed=False)
        groups: dict[int, list[int]] = {}
        for node, lab in enumerate(labels):
            groups.setdefault(lab, []).append(node)
        return sorted(groups.values(), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def with_edges(self, extra: Iterable) -> "Graph":
        """Return a copy with ``extra`` edges added."""
        return Graph(self.node_count, self.edges | {normalize_edge(*e) for e in extra},
                     self.node_labels, self.partition)

    def missing_edges(self) -> list[Edge]:
        return [e for e in combinations(range(self.node_count), 2) if e not in self.edges]

    def subgraph_nodes(self) -> list[list[int]]:
        """Nodes grouped by ``partition``; one group if no partition is set."""
        if self.partition is None:
            return [list(range(self.node_count))]
        groups: dict[int, list[int]] = {}
        for node, p in enumerate(self.partition):
            groups.setdefault(p, []).append(node)
        return [groups[k] for k in sorted(groups)]


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidGraphError("a simple cycle needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Star ``K_{1,leaves}`` with the hub at node 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def laplacian(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian ``diag(deg) - A`` as a dense float array."""
    L = np.zeros((g.node_count, g.node_count))
    for u, v in g.edges:
        L[u, u] += 1.0
        L[v, v] += 1.0
        L[u, v] -= 1.0
        L[v, u] -= 1.0
    return L


def edge_laplacian(n: int, e) -> np.ndarray:
    """Laplacian ``b b^T`` of the single edge ``e`` on ``n`` nodes."""
    u, v = normalize_edge(*e)
    if u < 0 or v >= n:
        raise InvalidEdgeError(f"edge ({u}, {v}) out of range for {n} nodes")
    L = np.zeros((n, n))
    L[u, u] = L[v, v] = 1.0
    L[u, v] = L[v, u] = -1.0
    return L


@dataclass(frozen=True)
class StubbornnessProfile:
    """Per-node stubbornness ``d_j >= 0``; ``Q = L + diag(values)``."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(x) for x in np.ravel(self.values))
        if not vals:
            raise InvalidGraphError("stubbornness profile is empty")
        if any(not np.isfinite(x) or x < 0 for x in vals):
            raise InvalidGraphError("stubbornness values must be finite and >= 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def identity(cls, n: int) -> "StubbornnessProfile":
        return cls((1.0,) * n)

    def __len__(self):
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def is_valid_for(self, groups: Iterable[Sequence[int]]) -> bool:
        """True if every node group holds at least one strictly positive entry."""
        return all(any(self.values[j] > 0 for j in grp) for grp in groups)


ConnectingEdge = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class CompositeSpec:
    """Disjoint subgraphs plus the connecting edges ``E_con`` between them.

    ``connecting_edges`` holds pairs ``((i, u), (j, v))``: local node ``u`` of
    subgraph ``i`` joined to local node ``v`` of subgraph ``j``, ``i != j``.
    When ``bridge_nodes`` is given, every connecting edge must run between
    bridge nodes; otherwise endpoints are arbitrary.
    """

    subgraphs: tuple
    connecting_edges: tuple = ()
    bridge_nodes: tuple | None = None

    def __post_init__(self):
        subs = tuple(self.subgraphs)
        if not subs:
            raise InvalidGraphError("a composite needs at least one subgraph")
        object.__setattr__(self, "subgraphs", subs)
        if self.bridge_nodes is not None:
            bridges = tuple(int(b) for b in self.bridge_nodes)
            if len(bridges) != len(subs):
                raise InvalidGraphError("need exactly one bridge node per subgraph")
            for i, b in enumerate(bridges):
                if not 0 <= b < subs[i].node_count:
                    raise InvalidGraphError(f"bridge node {b} out of range in subgraph {i}")
            object.__setattr__(self, "bridge_nodes", bridges)
        edges = []
        for (i, u), (j, v) in self.connecting_edges:
            i, u, j, v = int(i), int(u), int(j), int(v)
            if i == j:
                raise InvalidEdgeError(f"connecting edge inside subgraph {i}")
            for s, x in ((i, u), (j, v)):
                if not 0 <= s < len(subs):
                    raise InvalidEdgeError(f"connecting edge references subgraph {s}")
                if not 0 <= x < subs[s].node_count:
                    raise InvalidEdgeError(f"node {x} out of range in subgraph {s}")
            if self.bridge_nodes is not None and (
                    u != self.bridge_nodes[i] or v != self.bridge_nodes[j]):
                raise InvalidEdgeError("connecting edges must join bridge nodes")
            edges.append(((i, u), (j, v)))
        object.__setattr__(self, "connecting_edges", tuple(edges))

    @property
    def sizes(self) -> list[int]:
        return [g.node_count for g in self.subgraphs]

    @property
    def offsets(self) -> list[int]:
        return [0] + list(np.cumsum(self.sizes)[:-1].tolist())

    @classmethod
    def from_backbone(cls, subgraphs, bridge_nodes, backbone_edges) -> "CompositeSpec":
        """Bridge-node composite whose backbone has edges between subgraph indices."""
        con = [((i, bridge_nodes[i]), (j, bridge_nodes[j])) for i, j in backbone_edges]
        return cls(tuple(subgraphs), tuple(con), tuple(bridge_nodes))


def assemble(spec: CompositeSpec) -> tuple[Graph, dict]:
    """Build the composite graph and the ``(subgraph, local) -> global`` map."""
    offsets = spec.offsets
    index = {}
    edges = []
    partition = []
    for i, (g, off) in enumerate(zip(spec.subgraphs, offsets)):
        for k in range(g.node_count):
            index[(i, k)] = off + k
        partition.extend([i] * g.node_count)
        edges.extend((u + off, v + off) for u, v in g.edges)
    for (i, u), (j, v) in spec.connecting_edges:
        edges.append((index[(i, u)], index[(j, v)]))
    labels = None
    if all(g.node_labels is not None for g in spec.subgraphs):
        labels = tuple(lab for g in spec.subgraphs for lab in g.node_labels)
        if len(set(labels)) != len(labels):
            labels = None
    N = sum(spec.sizes)
    return Graph(N, edges, labels, tuple(partition)), index


def erdos_renyi(n: int, p: float = DEFAULT_ER_P, rng_seed=None) -> Graph:
    """G(n, p): each of the ``n(n-1)/2`` pairs present independently w.p. ``p``."""
    if n < 1:
        raise InvalidGraphError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise InvalidGraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(rng_seed)
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


def random_connected_er(n_range, p: float = DEFAULT_ER_P, rng_seed=None,
                        max_tries: int = 1000) -> Graph:
    """Connected Erdos-Renyi graph whose size is uniform on ``n_range``.

    ``n_range`` is an inclusive ``(low, high)`` pair. Samples are redrawn
    from the same stream until one is connected.
    """
    lo, hi = int(min(n_range)), int(max(n_range))
    if lo < 1:
        raise InvalidGraphError("sizes must be >= 1")
    rng = np.random.default_rng(rng_seed)
    n = int(rng.integers(lo, hi + 1))
    for _ in range(max_tries):
        g = erdos_renyi(n, p, rng)
        if g.is_connected():
            return g
    raise GenerationError(
        f"no connected G({n}, {p}) found in {max_tries} tries; raise p or max_tries")


def random_stubbornness(n: int, rng_seed=None, zero_prob: float = 0.2) -> StubbornnessProfile:
    """i.i.d. mixture: 0 with probability ``zero_prob``, else uniform on (0, 1]."""
    if n < 1:
        raise InvalidGraphError("n must be >= 1")
    rng = np.random.default_rng(rng_seed)
    zero = rng.random(n) < zero_prob
    # 1 - U[0,1) is uniform on (0, 1]
    vals = 1.0 - rng.random(n)
    return StubbornnessProfile(np.where(zero, 0.0, vals))


def random_tree(n: int, rng_seed=None) -> list[Edge]:
    """Random spanning tree on ``n`` nodes by random attachment."""
    rng = np.random.default_rng(rng_seed)
    order = rng.permutation(n)
    return [normalize_edge(order[i], order[rng.integers(0, i)]) for i in range(1, n)]


def random_bridge_composite(sizes: Sequence[int], rng_seed=None, p: float = 0.5,
                            backbone_extra_p: float = 0.3) -> CompositeSpec:
    """Random bridge-node composite.

    Subgraphs are connected G(n_i, p); bridge nodes are uniform; the backbone
    is a random spanning tree plus each remaining pair with probability
    ``backbone_extra_p``.
    """
    rng = np.random.default_rng(rng_seed)
    subs = [random_connected_er((s, s), p, rng) for s in sizes]
    bridges = [int(rng.integers(0, s)) for s in sizes]
    n = len(sizes)
    backbone = set(random_tree(n, rng)) if n > 1 else set()
    for e in combinations(range(n), 2):
        if e not in backbone and rng.random() < backbone_extra_p:
            backbone.add(e)
    return CompositeSpec.from_backbone(subs, bridges, sorted(backbone))
