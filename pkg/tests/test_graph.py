import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import block_diag

from netcoherence.exceptions import GenerationError, InvalidEdgeError, InvalidGraphError
from netcoherence.graph import (CompositeSpec, Graph, StubbornnessProfile, assemble,
                                complete_graph, edge_laplacian, erdos_renyi, laplacian,
                                random_bridge_composite, random_connected_er,
                                random_stubbornness)


@st.composite
def graphs(draw, max_nodes=9):
    n = draw(st.integers(1, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, k in zip(pairs, keep) if k])


def test_edges_are_order_insensitive():
    g = Graph(3, [(2, 0), (0, 2), (1, 2)])
    assert g.edges == {(0, 2), (1, 2)}
    assert g.has_edge(2, 0)


@pytest.mark.parametrize("edges", [[(1, 1)], [(0, 3)], [(-1, 0)]])
def test_invalid_edges_rejected(edges):
    with pytest.raises(InvalidEdgeError):
        Graph(3, edges)


def test_laplacian_k2():
    np.testing.assert_array_equal(laplacian(Graph(2, [(0, 1)])), [[1, -1], [-1, 1]])


def test_laplacian_empty_graph():
    np.testing.assert_array_equal(laplacian(Graph(3)), np.zeros((3, 3)))


def test_laplacian_of_example_second_subgraph(example_subgraphs):
    _, g2 = example_subgraphs
    L = laplacian(g2)
    np.testing.assert_array_equal(np.diag(L), [3, 2, 2, 1])
    expected = -np.array([[0, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]])
    np.testing.assert_array_equal(L - np.diag(np.diag(L)), expected)


def test_edge_laplacian():
    np.testing.assert_array_equal(edge_laplacian(2, (0, 1)), [[1, -1], [-1, 1]])
    L = edge_laplacian(3, (2, 0))
    expected = np.zeros((3, 3))
    expected[0, 0] = expected[2, 2] = 1
    expected[0, 2] = expected[2, 0] = -1
    np.testing.assert_array_equal(L, expected)
    np.testing.assert_allclose(np.linalg.eigvalsh(edge_laplacian(5, (1, 3))), [0, 0, 0, 0, 2],
                               atol=1e-12)
    with pytest.raises(InvalidEdgeError):
        edge_laplacian(3, (1, 1))


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_laplacian_symmetric_psd_zero_rows(g):
    L = laplacian(g)
    np.testing.assert_array_equal(L, L.T)
    np.testing.assert_array_equal(L.sum(axis=1), 0)
    assert np.linalg.eigvalsh(L).min() > -1e-10


def test_assemble_example(example_composite):
    g = example_composite
    assert g.node_count == 7
    assert g.node_labels == (1, 2, 3, 4, 5, 6, 7)
    labelled = {(g.label(u), g.label(v)) for u, v in g.edges}
    assert labelled == {(1, 2), (2, 3), (4, 5), (4, 6), (4, 7), (5, 6), (2, 4)}
    assert g.partition == (0, 0, 0, 1, 1, 1, 1)


def test_assemble_trivial_cases():
    g = Graph(4, [(0, 1), (2, 3)])
    assembled, index = assemble(CompositeSpec((g,)))
    assert assembled.edges == g.edges
    assert index == {(0, k): k for k in range(4)}
    k2, _ = assemble(CompositeSpec((Graph(1), Graph(1)), (((0, 0), (1, 0)),)))
    assert k2.edges == {(0, 1)}


def test_assemble_rejects_bad_connecting_edges():
    with pytest.raises(InvalidEdgeError):
        CompositeSpec((Graph(2), Graph(2)), (((0, 0), (1, 5)),))
    with pytest.raises(InvalidEdgeError):
        CompositeSpec((Graph(2), Graph(2)), (((0, 0), (0, 1)),))
    with pytest.raises(InvalidEdgeError):
        CompositeSpec((Graph(2), Graph(2)), (((0, 0), (1, 1)),), bridge_nodes=(0, 0))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=4), st.integers(0, 2**32 - 1))
def test_composite_laplacian_block_decomposition(sizes, seed):
    spec = random_bridge_composite(sizes, seed)
    g, index = assemble(spec)
    expected = block_diag(*[laplacian(s) for s in spec.subgraphs])
    for (i, u), (j, v) in spec.connecting_edges:
        expected = expected + edge_laplacian(g.node_count, (index[i, u], index[j, v]))
    np.testing.assert_array_equal(laplacian(g), expected)
    # same spec, same indexing
    assert assemble(spec) == (g, index)


def test_erdos_renyi_extremes():
    assert erdos_renyi(6, 1.0, 1) == complete_graph(6)
    assert erdos_renyi(6, 0.0, 1).edge_count == 0
    with pytest.raises(InvalidGraphError):
        erdos_renyi(4, 1.5)


def test_erdos_renyi_reproducible():
    assert erdos_renyi(12, 0.3, 42) == erdos_renyi(12, 0.3, 42)
    assert erdos_renyi(12, 0.3, 42) != erdos_renyi(12, 0.3, 43)


def test_erdos_renyi_mean_edge_count():
    counts = [erdos_renyi(10, 0.5, s).edge_count for s in range(10_000)]
    assert abs(np.mean(counts) - 22.5) <= 0.02 * 22.5


def test_random_connected_er():
    assert random_connected_er((2, 2), 1.0, 0) == complete_graph(2)
    sizes = set()
    for s in range(60):
        g = random_connected_er((8, 15), 0.3, s)
        assert g.is_connected()
        sizes.add(g.node_count)
    assert sizes <= set(range(8, 16)) and len(sizes) > 4
    with pytest.raises(GenerationError):
        random_connected_er((30, 30), 0.001, 0, max_tries=5)


def test_random_stubbornness_mixture():
    d = random_stubbornness(100_000, 7).as_array()
    assert 0.19 <= np.mean(d == 0) <= 0.21
    assert d.min() >= 0 and d.max() <= 1
    assert random_stubbornness(50, 3) == random_stubbornness(50, 3)


def test_identity_profile():
    assert StubbornnessProfile.identity(4).values == (1.0, 1.0, 1.0, 1.0)


def test_profile_validation():
    with pytest.raises(InvalidGraphError):
        StubbornnessProfile([1.0, -0.1])
    d = StubbornnessProfile([0, 0, 1, 0])
    assert d.is_valid_for([[0, 1, 2], [3]]) is False
    assert d.is_valid_for([[0, 1, 2, 3]]) is True
