import numpy as np
import pytest

from hstar import core, hyperstar as hs, reduction as red, spectral
from hstar.errors import DimensionMismatch, InvalidPlan, NotUniform

import suites


def _plan(h, removed, mode=red.Q):
    return red.ReductionPlan(hs.detect_hyperstars(h)[0], removed, mode)


def _fig2_minus_3():
    # Fig. 2 with vertex 3 deleted, vertices 4..8 renamed 3..7
    return core.WeightedHypergraph.from_edges(7, [
        ((1, 3, 4), 1), ((1, 5), 2), ((1, 6), 2), ((2, 3), 1), ((2, 4), 1),
        ((2, 5), 2), ((2, 6), 2), ((3, 4, 5, 6), 1), ((5, 6), 1), ((5, 6, 7), 3),
    ])


def _fig2_minus_2_3():
    return core.WeightedHypergraph.from_edges(6, [
        ((1, 2, 3), 1), ((1, 4), 2), ((1, 5), 2), ((2,), 1), ((3,), 1),
        ((4,), 2), ((5,), 2), ((2, 3, 4, 5), 1), ((4, 5), 1), ((4, 5, 6), 3),
    ])


def test_q_reduce_fig2_left():
    pair = red.q_reduce(suites.fig2(), _plan(suites.fig2(), [3]))
    assert pair.reduced == _fig2_minus_3()
    assert pair.surviving == (1, 2, 4, 5, 6, 7, 8)
    np.testing.assert_allclose(pair.masses.vertex, [1.5, 1.5, 1, 1, 1, 1, 1])


def test_q_reduce_fig2_right():
    pair = red.q_reduce(suites.fig2(), _plan(suites.fig2(), [2, 3]))
    assert pair.reduced == _fig2_minus_2_3()
    np.testing.assert_allclose(pair.masses.vertex, [3, 1, 1, 1, 1, 1])


def test_committed_fixture_matches_library():
    pair = red.q_reduce(suites.fig2(), _plan(suites.fig2(), [3]))
    assert suites.FIG3_LEFT.read_text() == red.format_reduced(pair)
    assert core.load_hypergraph(suites.FIG3_LEFT) == pair.reduced


def test_characteristic_entries_for_single_survivor():
    # one kept leaf of two: both leaf rows carry 1/sqrt(2)
    pair = red.q_reduce(suites.fig1(), _plan(suites.fig1(), [2]))
    np.testing.assert_allclose(pair.K[:2, 0], [2 ** -0.5, 2 ** -0.5])
    np.testing.assert_allclose(pair.K[2:, 1:], np.eye(5))
    np.testing.assert_allclose(pair.characteristic[:2, 0], [1, 1])


def test_characteristic_columns_orthonormal():
    k = red.fractional_characteristic(9, (1, 2, 3, 6, 7, 8, 9), (1, 2, 3), (4, 5))
    np.testing.assert_allclose(k.T @ k, np.eye(7), atol=1e-14)
    # the kept-leaf block projects onto the span of the leaf indicator
    block = k[:5, :3]
    np.testing.assert_allclose(block.sum(axis=1), [3 / np.sqrt(15)] * 5, atol=1e-14)


@pytest.mark.parametrize("removed", [[2], [3], [1, 3], [2, 3]])
def test_quotient_spectrum_inside_original(removed):
    h = suites.fig2()
    pair = red.q_reduce(h, _plan(h, removed))
    # non-symmetric solve of M B against a brute-force A
    got = np.sort(np.linalg.eigvals(pair.mass_B).real)
    ref = spectral.sym_eig(core.adjacency_by_edges(h), method="jacobi").eigenvalues
    cont = spectral.spectrum_contained(got, ref, 1e-8)
    assert cont
    np.testing.assert_allclose(cont.leftover, np.zeros(len(removed)), atol=1e-8)


def test_laplacian_quotient_spectrum_inside_original():
    h = suites.fig2()
    pair = red.q_reduce(h, _plan(h, [2, 3]))
    got = np.sort(np.linalg.eigvals(pair.lap_mass).real)
    a = core.adjacency_by_edges(h)
    ref = spectral.sym_eig(np.diag(a.sum(axis=1)) - a, method="jacobi").eigenvalues
    cont = spectral.spectrum_contained(got, ref, 1e-8)
    assert cont
    np.testing.assert_allclose(cont.leftover, [6, 6], atol=1e-8)


def test_reduced_degrees_equal_original_degrees():
    for h, removed in ((suites.fig2(), [3]), (suites.fig2(), [1, 2]), (suites.fig1(), [1])):
        pair = red.q_reduce(h, _plan(h, removed))
        idx = [v - 1 for v in pair.surviving]
        np.testing.assert_allclose(pair.reduced_degrees, core.degrees(h).adjacency[idx], atol=1e-12)
        # q mode: column sums of M B, i.e. B M 1
        np.testing.assert_allclose(pair.reduced_degrees, pair.B @ pair.masses.vertex, atol=1e-12)


@pytest.mark.parametrize("mode", [red.Q, red.Q_STAR])
def test_fig1_reduction_checks_pass(mode):
    pair = red.reduce(suites.fig1(), _plan(suites.fig1(), [2], mode))
    checks = red.verify_adjacency_reduction(pair) + red.verify_laplacian_reduction(pair)
    failed = [c for c in checks if c.status == "fail"]
    assert not failed
    literal = [c for c in checks if "literally" in c.name]
    assert len(literal) == 2 and all(c.status == "skipped" for c in literal)


def test_q_star_drops_edges_and_keeps_uniformity():
    h = suites.fig1()
    pair = red.q_star_reduce(h, _plan(h, [2], red.Q_STAR))
    assert core.is_uniform(pair.reduced, 3)
    assert pair.reduced.n_edges == 4
    np.testing.assert_allclose(pair.masses.edge, [2, 2, 1, 1])
    np.testing.assert_allclose(pair.masses.vertex[0], 0.5)
    np.testing.assert_allclose(pair.sym, pair.K.T @ core.adjacency_matrix(h) @ pair.K, atol=1e-12)


def test_q_star_reduced_degrees():
    h = suites.fig1()
    pair = red.q_star_reduce(h, _plan(h, [1], red.Q_STAR))
    np.testing.assert_allclose(pair.reduced_degrees, pair.mass_B.sum(axis=1), atol=1e-12)
    idx = [v - 1 for v in pair.surviving]
    np.testing.assert_allclose(pair.reduced_degrees, core.degrees(h).adjacency[idx], atol=1e-12)


def test_alternative_vertex_mass_breaks_compression():
    h = suites.fig1()
    pair = red.q_star_reduce(h, _plan(h, [2], red.Q_STAR), vertex_mass=red.GROW)
    checks = {c.name: c for c in red.verify_adjacency_reduction(pair)}
    assert checks["M^1/2 B M^1/2 = K^T A K"].status == "fail"


def test_plan_validation():
    w = hs.detect_hyperstars(suites.fig2())[0]
    with pytest.raises(InvalidPlan):
        red.ReductionPlan(w, (), red.Q)
    with pytest.raises(InvalidPlan):
        red.ReductionPlan(w, (1, 2, 3), red.Q)
    with pytest.raises(InvalidPlan):
        red.ReductionPlan(w, (4,), red.Q)
    with pytest.raises(InvalidPlan):
        red.ReductionPlan(w, (1,), "p")
    with pytest.raises(NotUniform):
        red.ReductionPlan(w, (1,), red.Q_STAR)


def test_plan_rejects_corrupted_host():
    plan = _plan(suites.fig1(), [2])
    with pytest.raises(InvalidPlan, match="balance"):
        red.q_reduce(suites.fig1().with_weight(0, 2.0), plan)


def test_mode_mismatch():
    plan = _plan(suites.fig1(), [2], red.Q_STAR)
    with pytest.raises(InvalidPlan):
        red.q_reduce(suites.fig1(), plan)
    with pytest.raises(InvalidPlan):
        red.q_star_reduce(suites.fig1(), _plan(suites.fig1(), [2]))


def test_q_reduce_drops_emptied_singleton():
    h = core.WeightedHypergraph.from_edges(7, [*suites.fig1().edges, ((2,), 4.0)])
    with pytest.warns(UserWarning, match="dropped"):
        pair = red.q_reduce(h, _plan(h, [2]))
    assert pair.reduced.n_edges == 6


def test_lift_eigenvector():
    pair = red.q_reduce(suites.fig2(), _plan(suites.fig2(), [3]))
    s = spectral.sym_eig(pair.sym)
    for mu, x in s.pairs():
        y = red.lift_eigenvector(pair, x)
        np.testing.assert_allclose(core.adjacency_matrix(suites.fig2()) @ y, mu * y, atol=1e-10)
    with pytest.raises(DimensionMismatch):
        red.lift_eigenvector(pair, np.ones(8))


def test_identity_pair_is_trivial():
    pair = red.ReducedPair.identity(suites.fig1())
    checks = red.verify_adjacency_reduction(pair)
    assert all(c.status != "fail" for c in checks)
    assert pair.original_index(3) == 3


def test_format_reduced_header_and_round_trip():
    pair = red.q_reduce(suites.fig2(), _plan(suites.fig2(), [2, 3]))
    text = red.format_reduced(pair)
    assert text.splitlines()[:2] == ["# reduced hypergraph", "# plan mode=q removed=2,3"]
    assert "# vertex map 1=1 2=4 3=5 4=6 5=7 6=8" in text
    assert core.parse_hypergraph(text) == pair.reduced
    assert pair.original_index(2) == 4


def test_interlacing_helper():
    assert red._interlacing_violation(np.array([0.0, 1.0, 2.0]), np.array([0.5, 1.5])) == 0
    assert red._interlacing_violation(np.array([0.0, 1.0, 2.0]), np.array([3.0, 1.5])) > 0
