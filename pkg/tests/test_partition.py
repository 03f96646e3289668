import warnings

import numpy as np
import pytest

from hstar import core, hyperstar as hs, partition as pt, reduction as red
from hstar.errors import DegenerateFiedler, Disconnected

import suites


def test_fig1_partition():
    part = pt.fiedler_partition(suites.fig1())
    assert part.positive_side == (1, 2, 4, 5, 7)
    assert part.negative_side == (3, 6)
    assert not part.degenerate
    assert part.format() == "V+ : 1 2 4 5 7\nV- : 3 6\n"


def test_fig2_partition():
    part = pt.fiedler_partition(suites.fig2())
    assert part.sides() == (frozenset({1, 2, 3, 4, 5}), frozenset({6, 7, 8}))
    assert part.fiedler_value == pytest.approx(4.85655552619, abs=1e-9)


def test_partition_is_exhaustive_and_disjoint():
    for _, h, _ in suites.ghs_suite()[:20]:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateFiedler)
            part = pt.fiedler_partition(h)
        pos, neg = part.sides()
        assert not pos & neg
        assert pos | neg == set(h.vertices)


def test_degenerate_fiedler_warns():
    # a 4-cycle has a repeated second eigenvalue
    h = core.WeightedHypergraph.from_edges(4, [((1, 2), 1), ((2, 3), 1), ((3, 4), 1), ((1, 4), 1)])
    with pytest.warns(DegenerateFiedler):
        part = pt.fiedler_partition(h)
    assert part.degenerate


def test_disconnected_partition():
    h = core.WeightedHypergraph.from_edges(4, [((1, 2), 1), ((3, 4), 1)])
    with pytest.raises(Disconnected):
        pt.fiedler_partition(h)


def test_split_by_sign_treats_small_entries_as_positive():
    assert pt.split_by_sign(np.array([0.5, -1e-12, -0.3]), 1e-9) == ((1, 2), (3,))
    assert pt.split_by_sign(np.array([1.0, -1.0]), 1e-9, labels=[4, 9]) == ((4,), (9,))


@pytest.mark.parametrize("x, y, ok, bad", [
    ([1, -1, 2], [3, -2, 1], True, 0),
    ([1, -1, 2], [-3, 2, -1], True, 0),
    ([1, -1, 2], [1, 1, 2], False, 1),
    ([1, 0, 2], [1, -5, 2], True, 0),
])
def test_signs_agree(x, y, ok, bad):
    assert pt.signs_agree(np.array(x, float), np.array(y, float), 1e-9) == (ok, bad)


@pytest.mark.parametrize("h_fn, removed, mode", [
    (suites.fig1, [2], red.Q),
    (suites.fig1, [1], red.Q_STAR),
    (suites.fig2, [3], red.Q),
    (suites.fig2, [1, 2], red.Q),
])
def test_sign_correspondence_on_figures(h_fn, removed, mode):
    h = h_fn()
    pair = red.reduce(h, red.ReductionPlan(hs.detect_hyperstars(h)[0], removed, mode))
    checks = pt.sign_correspondence(pair)
    assert checks and all(c.status != "fail" for c in checks)
    assert pt.fiedler_correspondence(pair).passed


def test_fig2_repeated_weight_is_skipped():
    h = suites.fig2()
    pair = red.q_reduce(h, red.ReductionPlan(hs.detect_hyperstars(h)[0], [3]))
    skipped = [c for c in pt.sign_correspondence(pair) if c.status == "skipped"]
    assert len(skipped) == 1 and "6 (x1 reduced, x2 original)" in skipped[0].note


def test_fiedler_correspondence_skips_when_fiedler_value_is_dropped():
    # leaves with small weight: the Fiedler value is the star weight, which q-reduction drops
    h = core.WeightedHypergraph.from_edges(5, [((1, 3), 0.1), ((2, 3), 0.1), ((3, 4), 5.0), ((4, 5), 5.0), ((3, 5), 5.0)])
    pair = red.q_reduce(h, red.ReductionPlan(hs.detect_hyperstars(h)[0], [2]))
    check = pt.fiedler_correspondence(pair)
    assert check.status == "skipped"
