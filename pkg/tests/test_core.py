import numpy as np
import pytest

from hstar import core
from hstar.errors import ParseError, ZeroAdjacencyDegree

import suites


def test_fig1_incidence_matches_printed_matrix():
    np.testing.assert_array_equal(core.build_incidence(suites.fig1()), suites.FIG1_INCIDENCE)


def test_fig2_incidence_matches_printed_matrix():
    np.testing.assert_array_equal(core.build_incidence(suites.fig2()), suites.FIG2_INCIDENCE)


def test_from_incidence_round_trip():
    h = core.WeightedHypergraph.from_incidence(suites.FIG2_INCIDENCE)
    assert h == suites.fig2()


def test_fig1_adjacency_by_hand():
    # A(v,u) = sum of w(e) over edges containing both; worked out from the edge list
    expected = np.array([
        [0, 0, 1, 3, 2, 0, 0],
        [0, 0, 1, 3, 2, 0, 0],
        [1, 1, 0, 2, 0, 1, 1],
        [3, 3, 2, 0, 7, 0, 3],
        [2, 2, 0, 7, 0, 0, 3],
        [0, 0, 1, 0, 0, 0, 1],
        [0, 0, 1, 3, 3, 1, 0],
    ], dtype=float)
    np.testing.assert_allclose(core.adjacency_matrix(suites.fig1()), expected, atol=1e-12)


def test_adjacency_formula_matches_edge_iteration():
    for h in (suites.fig1(), suites.fig2()):
        diff = np.abs(core.adjacency_matrix(h) - core.adjacency_by_edges(h)).max()
        assert diff <= 1e-12


def test_adjacency_is_bitwise_symmetric_with_zero_diagonal():
    h = suites.random_positive_suite()[0][1]
    a = core.adjacency_matrix(h)
    assert np.array_equal(a, a.T)
    assert np.all(np.diag(a) == 0)


def test_singleton_edges_do_not_reach_adjacency():
    h = core.WeightedHypergraph.from_edges(3, [((1,), 5.0), ((1, 2), 1.0)])
    np.testing.assert_array_equal(core.adjacency_matrix(h), [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    np.testing.assert_array_equal(core.degrees(h).vertex, [6, 1, 0])


def test_degree_vectors_fig1():
    d = core.degrees(suites.fig1())
    np.testing.assert_allclose(d.vertex, [3, 3, 3, 9, 7, 1, 4])
    np.testing.assert_allclose(d.edge, [3, 6, 3, 6, 3, 9])
    np.testing.assert_allclose(d.adjacency, [6, 6, 6, 18, 14, 2, 8])


@pytest.mark.parametrize("h_fn", [suites.fig1, suites.fig2])
def test_adjacency_degree_formula_equals_row_sums(h_fn):
    h = h_fn()
    root = np.sqrt(core.build_incidence(h))
    formula = (root @ root.T).sum(axis=1) - core.degrees(h).vertex
    np.testing.assert_allclose(core.adjacency_matrix(h).sum(axis=1), formula, atol=1e-12)
    np.testing.assert_allclose(core.degrees(h).adjacency, formula, atol=1e-12)


def test_laplacian_annihilates_constants():
    lap = core.laplacian(suites.fig2())
    np.testing.assert_allclose(lap @ np.ones(8), 0, atol=1e-12)


def test_transition_is_row_stochastic():
    t = core.transition_matrix(suites.fig2())
    np.testing.assert_allclose(t.sum(axis=1), 1, atol=1e-12)


def test_normalized_matrices_need_positive_degree():
    h = core.WeightedHypergraph.from_edges(3, [((1, 2), 1.0)])
    with pytest.raises(ZeroAdjacencyDegree) as info:
        core.normalized_laplacian(h)
    assert info.value.vertex == 3
    with pytest.raises(ZeroAdjacencyDegree):
        core.transition_matrix(h)


def test_matrices_are_read_only():
    h = suites.fig1()
    with pytest.raises(ValueError):
        core.adjacency_matrix(h)[0, 1] = 5


def test_rank_antirank_and_uniformity():
    assert core.rank_antirank(suites.fig1()) == (3, 3)
    assert core.is_uniform(suites.fig1(), 3)
    assert core.rank_antirank(suites.fig2()) == (5, 2)
    assert not core.is_uniform(suites.fig2())
    empty = core.WeightedHypergraph(4)
    assert core.rank_antirank(empty) == (0, 0)
    assert not core.is_uniform(empty)


def test_components():
    h = core.WeightedHypergraph.from_edges(6, [((1, 2, 3), 1.0), ((5, 6), 2.0)])
    assert core.connected_components(h) == [[1, 2, 3], [4], [5, 6]]
    assert core.is_connected(suites.fig2())


@pytest.mark.parametrize("bad", [
    [((), 1.0)],
    [((1, 1), 1.0)],
    [((1, 9), 1.0)],
    [((1, 2), 0.0)],
    [((1, 2), -1.0)],
    [((1, 2), float("nan"))],
])
def test_invalid_edges_rejected(bad):
    with pytest.raises(ValueError):
        core.WeightedHypergraph.from_edges(3, bad)


def test_duplicate_edges_are_kept():
    h = core.WeightedHypergraph.from_edges(2, [((1, 2), 1.0), ((2, 1), 1.0)])
    assert h.n_edges == 2
    assert core.adjacency_matrix(h)[0, 1] == 2.0


def test_format_parse_round_trip():
    for h in (suites.fig1(), suites.fig2(), suites.ghs_suite()[3][1]):
        assert core.parse_hypergraph(core.format_hypergraph(h, ["a comment"])) == h


def test_weights_format_without_trailing_zero():
    assert core.format_weight(3.0) == "3"
    assert core.format_weight(0.25) == "0.25"


@pytest.mark.parametrize("text, line", [
    ("edge 1 1 2\n", 1),
    ("vertices 3\nedge x 1 2\n", 2),
    ("vertices 3\n\nedge 1 1 4\n", 3),
    ("vertices 3\nedge 1 1 1\n", 2),
    ("vertices 3\nedge -1 1 2\n", 2),
    ("vertices 3\nnode 1\n", 2),
    ("vertices 3\nedge 2\n", 2),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        core.parse_hypergraph(text)
    assert info.value.line == line


def test_parse_error_for_missing_header():
    with pytest.raises(ParseError):
        core.parse_hypergraph("# nothing\n")
