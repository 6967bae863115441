"""
Coherence measures and resistance distances.

Consensus coherence is ``H_C = tr(L^+) / 2`` for the Laplacian ``L`` of a
connected graph; stubborn-agent coherence is ``H_S = tr(Q^-1) / 2`` with
``Q = L + diag(d)``. Resistance distances treat each edge as a unit resistor
and are read off the pseudo-inverse: ``r(u, v) = L+_uu + L+_vv - 2 L+_uv``.
"""
from __future__ import annotations

import numpy as np
from scipy import linalg

from .exceptions import DisconnectedGraphError, NotPositiveDefiniteError
from .graph import Graph, StubbornnessProfile, laplacian

# relative tolerance when deciding that two centralities are tied
TIE_RTOL = 1e-9


def _zero_tolerance(eigvals: np.ndarray) -> float:
    lam_max = max(float(np.max(np.abs(eigvals))), 1.0) if eigvals.size else 1.0
    return eigvals.size * np.finfo(float).eps * lam_max


def laplacian_spectrum(L: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Eigen-decomposition of a Laplacian.

    Returns ``(eigvals, eigvecs, n_zero)`` where ``n_zero`` counts eigenvalues
    below ``N * eps * lambda_max``, i.e. the number of connected components.
    """
    w, V = np.linalg.eigh(L)
    n_zero = int(np.sum(w <= _zero_tolerance(w)))
    return w, V, n_zero


def pseudo_inverse(L: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse of a connected graph's Laplacian."""
    w, V, n_zero = laplacian_spectrum(L)
    if n_zero > 1:
        raise DisconnectedGraphError(n_components=n_zero)
    inv = np.zeros_like(w)
    inv[n_zero:] = 1.0 / w[n_zero:]
    return (V * inv) @ V.T


def pseudo_inverse_shifted(L: np.ndarray) -> np.ndarray:
    """``(L + J/N)^-1 - J/N``; an independent route to ``L^+`` for cross-checks."""
    N = L.shape[0]
    J = np.full((N, N), 1.0 / N)
    try:
        M = np.linalg.inv(L + J)
    except np.linalg.LinAlgError as exc:
        raise DisconnectedGraphError() from exc
    return M - J


def pseudo_inverse_trace(L: np.ndarray) -> float:
    """Sum of reciprocal nonzero Laplacian eigenvalues."""
    w, _, n_zero = laplacian_spectrum(L)
    if n_zero > 1:
        raise DisconnectedGraphError(n_components=n_zero)
    return float(np.sum(1.0 / w[n_zero:]))


def coherence_consensus(g: Graph) -> float:
    """Steady-state total variance about the network mean, ``tr(L^+)/2``."""
    return 0.5 * pseudo_inverse_trace(laplacian(g))


def resistance_matrix(g: Graph) -> np.ndarray:
    """Symmetric matrix of pairwise resistance distances (zero diagonal)."""
    Lp = pseudo_inverse(laplacian(g))
    d = np.diag(Lp)
    R = d[:, None] + d[None, :] - 2.0 * Lp
    np.fill_diagonal(R, 0.0)
    return 0.5 * (R + R.T)


def total_effective_resistance(g: Graph) -> float:
    """Kirchhoff index: sum of ``r(u, v)`` over unordered pairs."""
    return float(np.sum(np.triu(resistance_matrix(g), 1)))


def resistance_centralities(g: Graph) -> np.ndarray:
    """``C(v) = sum_u r(u, v)`` for every node."""
    return resistance_matrix(g).sum(axis=1)


def resistance_centrality(g: Graph, v: int) -> float:
    return float(resistance_centralities(g)[v])


def argmin_lowest_index(values, rtol: float = TIE_RTOL) -> int:
    """Smallest index whose value is within ``rtol`` of the minimum."""
    values = np.asarray(values, dtype=float)
    best = values.min()
    slack = rtol * max(abs(best), 1.0)
    return int(np.flatnonzero(values <= best + slack)[0])


def min_centrality_node(g: Graph) -> int:
    """Node of minimum resistance centrality; ties go to the lowest index."""
    return argmin_lowest_index(resistance_centralities(g))


def stubborn_matrix(g: Graph, d: StubbornnessProfile) -> np.ndarray:
    """``Q = L + diag(d)``."""
    if len(d) != g.node_count:
        raise ValueError(f"profile has {len(d)} entries for {g.node_count} nodes")
    return laplacian(g) + np.diag(d.as_array())


def _unanchored_components(g: Graph, d: StubbornnessProfile) -> list[list[int]]:
    vals = d.values
    return [c for c in g.components() if not any(vals[j] > 0 for j in c)]


def _raise_singular(g: Graph, d: StubbornnessProfile):
    bad = _unanchored_components(g, d)
    if bad:
        raise NotPositiveDefiniteError(
            f"Q is singular: component(s) {bad} have no node with d > 0", bad)
    raise NotPositiveDefiniteError("Q is numerically not positive definite")


def coherence_stubborn(g: Graph, d: StubbornnessProfile) -> float:
    """``tr(Q^-1)/2``; valid whenever every component holds a stubborn node."""
    Q = stubborn_matrix(g, d)
    if _unanchored_components(g, d):
        _raise_singular(g, d)
    try:
        c = linalg.cho_factor(Q, lower=True)
    except linalg.LinAlgError:
        _raise_singular(g, d)
    Qinv = linalg.cho_solve(c, np.eye(g.node_count))
    return 0.5 * float(np.trace(Qinv))


def grounded_laplacian_coherence(g: Graph, d: StubbornnessProfile) -> float:
    """Same quantity as :func:`coherence_stubborn`, through the leader graph.

    A noise-free leader ``s`` is appended and joined to each node ``j`` with
    weight ``d_j``. Deleting ``s`` from the weighted Laplacian of that graph
    gives the grounded Laplacian, whose inverse trace (halved) is returned.
    """
    if len(d) != g.node_count:
        raise ValueError(f"profile has {len(d)} entries for {g.node_count} nodes")
    if _unanchored_components(g, d):
        _raise_singular(g, d)
    N = g.node_count
    s = N
    W = np.zeros((N + 1, N + 1))
    for u, v in g.edges:
        W[u, v] = W[v, u] = 1.0
    for j, dj in enumerate(d.values):
        W[j, s] = W[s, j] = dj
    L_lead = np.diag(W.sum(axis=1)) - W
    grounded = np.delete(np.delete(L_lead, s, axis=0), s, axis=1)
    return 0.5 * float(np.trace(np.linalg.inv(grounded)))
