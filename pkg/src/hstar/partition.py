"""Fiedler bipartitions and their correspondence across a reduction."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import core, spectral
from .core import WeightedHypergraph
from .errors import DegenerateFiedler
from .reduction import ReducedPair
from .report import Check

COR_SIGNS = {"q": "q-reduction sign-correspondence corollary", "q_star": "q*-reduction sign-correspondence corollary"}


@dataclass(frozen=True)
class Bipartition:
    positive_side: tuple[int, ...]
    negative_side: tuple[int, ...]
    fiedler_value: float
    vector: np.ndarray
    degenerate: bool = False

    def sides(self) -> tuple[frozenset, frozenset]:
        return frozenset(self.positive_side), frozenset(self.negative_side)

    def format(self) -> str:
        return (
            "V+ : " + " ".join(map(str, self.positive_side)) + "\n"
            + "V- : " + " ".join(map(str, self.negative_side)) + "\n"
        )


def split_by_sign(x: np.ndarray, tol: float, labels=None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertices with ``x >= -tol`` go to the positive side."""
    labels = list(labels) if labels is not None else list(range(1, len(x) + 1))
    pos = tuple(sorted(v for v, xv in zip(labels, x) if xv >= -tol))
    neg = tuple(sorted(v for v, xv in zip(labels, x) if xv < -tol))
    return pos, neg


def fiedler_partition(h: WeightedHypergraph, tol: float = spectral.EIG_TOL) -> Bipartition:
    """Split the vertices by the sign of the Laplacian's Fiedler vector.

    Raises Disconnected for a disconnected hypergraph. A repeated Fiedler
    eigenvalue still yields a partition, flagged ``degenerate`` and
    accompanied by a DegenerateFiedler warning.
    """
    lap = core.laplacian(h)
    value, x = spectral.fiedler_vector(lap, tol)
    mult = spectral.multiplicity(spectral.sym_eig(lap), value, tol)
    degenerate = mult > 1
    if degenerate:
        warnings.warn(f"Fiedler eigenvalue {value:.12g} has multiplicity {mult}; the partition is not unique",
                      DegenerateFiedler, stacklevel=2)
    pos, neg = split_by_sign(x, tol)
    return Bipartition(pos, neg, value, x, degenerate)


def signs_agree(x: np.ndarray, y: np.ndarray, tol: float) -> tuple[bool, int]:
    """Entrywise sign agreement up to one global flip.

    Entries with magnitude <= tol count as zero and agree with anything.
    Returns the verdict and the number of disagreeing entries under the
    better of the two orientations.
    """
    sx = np.where(np.abs(x) <= tol, 0, np.sign(x))
    sy = np.where(np.abs(y) <= tol, 0, np.sign(y))
    both = (sx != 0) & (sy != 0)
    same = int(np.sum(both & (sx != sy)))
    flipped = int(np.sum(both & (sx == sy)))
    bad = min(same, flipped)
    return bad == 0, bad


def sign_correspondence(pair: ReducedPair, tol: float = spectral.RESIDUAL_TOL,
                        eig_tol: float = spectral.EIG_TOL) -> list[Check]:
    """Compare eigenvector signs of the reduced and original Laplacians.

    For every eigenvalue that is simple in both ``L~(M B)`` and ``L(A)``: the
    reduced eigenvector ``x = M^{1/2} x~`` of ``L(M B)`` must have the same
    sign pattern on the surviving vertices as the eigenvector of ``L(A)``
    (computed independently), up to a global flip. Repeated eigenvalues are
    skipped because their eigenvectors are not unique.
    """
    thm = COR_SIGNS[pair.mode]
    lap_a = core.laplacian(pair.original)
    spec_a = spectral.sym_eig(lap_a)
    spec_t = spectral.sym_eig(pair.lap_sym)
    rows = [v - 1 for v in pair.surviving]
    root = np.sqrt(pair.masses.vertex)
    out = []
    skipped = []
    for i, lam in enumerate(spec_t.eigenvalues):
        mt = spectral.multiplicity(spec_t, lam, eig_tol)
        ma = spectral.multiplicity(spec_a, lam, eig_tol)
        if mt != 1 or ma != 1:
            skipped.append(f"{lam:.6g} (x{mt} reduced, x{ma} original)")
            continue
        xt = spec_t.eigenvectors[:, i]
        x = root * xt
        j = int(np.argmin(np.abs(spec_a.eigenvalues - lam)))
        y = spec_a.eigenvectors[:, j][rows]
        lifted = (pair.K @ xt)[rows]
        ok, bad = signs_agree(x, y, tol)
        ok_lift, bad_lift = signs_agree(x, lifted, tol)
        out.append(Check.truth(f"signs agree at eigenvalue {lam:.12g}", thm, ok and ok_lift,
                               note=f"{bad} mismatches vs L(A) eigenvector, {bad_lift} vs K x~"))
    if skipped:
        out.append(Check.skip("repeated eigenvalues", thm, "not sign-checked: " + ", ".join(skipped)))
    return out


def fiedler_correspondence(pair: ReducedPair, tol: float = spectral.RESIDUAL_TOL,
                           eig_tol: float = spectral.EIG_TOL) -> Check:
    """Compare the Fiedler partitions of the original and reduced hypergraph.

    The reduced partition uses the Fiedler vector of ``L(M B)``. Skipped when
    the two Fiedler eigenvalues differ or either is repeated.
    """
    thm = COR_SIGNS[pair.mode]
    name = "Fiedler partitions agree on surviving vertices"
    lap_a = core.laplacian(pair.original)
    spec_a = spectral.sym_eig(lap_a)
    spec_t = spectral.sym_eig(pair.lap_sym)
    try:
        lam_a, ya = spectral.fiedler_vector(lap_a, eig_tol)
        lam_t, xt = spectral.fiedler_vector(pair.lap_sym, eig_tol)
    except Exception as exc:  # disconnected input
        return Check.skip(name, thm, str(exc))
    ma = spectral.multiplicity(spec_a, lam_a, eig_tol)
    mt = spectral.multiplicity(spec_t, lam_t, eig_tol)
    gap = eig_tol * max(1.0, spec_a.radius)
    if ma != 1 or mt != 1:
        return Check.skip(name, thm, f"degenerate Fiedler eigenvalue (x{ma} original, x{mt} reduced)")
    if abs(lam_a - lam_t) > gap:
        return Check.skip(name, thm, f"Fiedler eigenvalues differ: {lam_a:.12g} original, {lam_t:.12g} reduced")
    rows = [v - 1 for v in pair.surviving]
    x = np.sqrt(pair.masses.vertex) * xt
    ok, bad = signs_agree(x, ya[rows], tol)
    return Check.truth(name, thm, ok, note=f"lambda_2 = {lam_a:.12g}, {bad} sign mismatches")
