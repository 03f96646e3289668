"""Dense symmetric eigensolvers, eigenvalue clustering and spectrum comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import core
from .errors import Disconnected, NoConvergence
from .report import Check

#: Largest matrix order the dense solvers accept.
DENSE_LIMIT = 2048
#: Relative tolerance for deciding that two eigenvalues are equal.
EIG_TOL = 1e-9
#: Absolute tolerance for residual checks.
RESIDUAL_TOL = 1e-8

JACOBI_MAX_SWEEPS = 60


@dataclass(frozen=True)
class SymSpectrum:
    """Ascending eigenvalues with orthonormal eigenvectors as columns.

    ``residual_tol`` is the bound the solver actually achieved, covering both
    the scaled eigen-residuals and the loss of orthonormality.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_tol: float

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if len(self) else 0.0

    def pairs(self):
        for i, lam in enumerate(self.eigenvalues):
            yield float(lam), self.eigenvectors[:, i]


class Cluster(NamedTuple):
    value: float
    multiplicity: int
    members: tuple[float, ...]


class Containment(NamedTuple):
    """Outcome of a multiset containment test.

    ``unmatched`` holds inner eigenvalues that found no partner, ``leftover``
    the outer eigenvalues that were not used.
    """

    contained: bool
    unmatched: tuple[float, ...]
    leftover: tuple[float, ...]

    def __bool__(self):
        return self.contained


def _canonical_signs(vectors: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    # first entry of non-negligible magnitude made positive
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        big = np.flatnonzero(np.abs(col) > tol * max(1.0, np.abs(col).max()))
        if big.size and col[big[0]] < 0:
            out[:, j] = -col
    return out


def jacobi_eigh(a: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi rotations; returns (eigenvalues, eigenvectors, sweeps used)."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(1.0, float(np.abs(a).max()) if n else 1.0)
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off <= 1e-15 * scale * max(n, 1):
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise NoConvergence(max_sweeps, off)


def sym_eig(m: np.ndarray, tol: float = RESIDUAL_TOL, method: str = "lapack") -> SymSpectrum:
    """Full eigendecomposition of a dense symmetric matrix.

    ``method`` is ``"lapack"`` (numpy's ``eigh``) or ``"jacobi"``. Raises
    NoConvergence when the achieved residual exceeds ``tol`` (scaled by
    ``max(1, ||M||_inf)`` for the eigen-residuals).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n > DENSE_LIMIT:
        raise ValueError(f"matrix order {n} exceeds the dense limit {DENSE_LIMIT}")
    norm = float(np.abs(m).sum(axis=1).max()) if n else 0.0
    if np.abs(m - m.T).max(initial=0.0) > 1e-12 * max(1.0, norm):
        raise ValueError("matrix is not symmetric")
    if method == "lapack":
        vals, vecs = np.linalg.eigh(m)
        iterations = 1
    elif method == "jacobi":
        vals, vecs, iterations = jacobi_eigh(m)
        order = np.argsort(vals, kind="stable")
        vals, vecs = vals[order], vecs[:, order]
    else:
        raise ValueError(f"unknown method {method!r}")
    vecs = _canonical_signs(vecs)
    if n:
        resid = float(np.abs(m @ vecs - vecs * vals).max()) / max(1.0, norm)
        orth = float(np.abs(vecs.T @ vecs - np.eye(n)).max())
    else:
        resid = orth = 0.0
    achieved = max(resid, orth, np.finfo(float).eps)
    if achieved > tol:
        raise NoConvergence(iterations, achieved)
    vals.flags.writeable = False
    vecs.flags.writeable = False
    return SymSpectrum(vals, vecs, achieved)


def _values(s) -> np.ndarray:
    if isinstance(s, SymSpectrum):
        return np.asarray(s.eigenvalues, dtype=float)
    return np.sort(np.asarray(s, dtype=float).ravel())


def _gap(values: np.ndarray, tol: float) -> float:
    radius = float(np.max(np.abs(values))) if values.size else 0.0
    return tol * max(1.0, radius)


def eigenvalue_clusters(s, tol: float = EIG_TOL) -> list[Cluster]:
    """Single-linkage clusters of eigenvalues closer than ``tol * max(1, radius)``."""
    vals = np.sort(_values(s))
    if vals.size == 0:
        return []
    gap = _gap(vals, tol)
    groups = [[vals[0]]]
    for x in vals[1:]:
        if x - groups[-1][-1] <= gap:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [Cluster(float(np.mean(g)), len(g), tuple(float(x) for x in g)) for g in groups]


def multiplicity(s, lam: float, tol: float = EIG_TOL) -> int:
    """Numerical multiplicity of ``lam``.

    Counts every member of each cluster that has an element within the
    clustering gap of ``lam``, so a cluster is never split by the probe.
    """
    vals = _values(s)
    gap = _gap(vals, tol)
    return sum(
        c.multiplicity
        for c in eigenvalue_clusters(vals, tol)
        if min(abs(x - lam) for x in c.members) <= gap
    )


def spectrum_contained(inner, outer, tol: float = EIG_TOL) -> Containment:
    """Greedy multiset matching of sorted eigenvalues within tolerance."""
    a, b = np.sort(_values(inner)), np.sort(_values(outer))
    both = np.concatenate([a, b])
    gap = _gap(both, tol)
    unmatched, leftover = [], []
    j = 0
    for x in a:
        while j < b.size and b[j] < x - gap:
            leftover.append(float(b[j]))
            j += 1
        if j < b.size and abs(b[j] - x) <= gap:
            j += 1
        else:
            unmatched.append(float(x))
    leftover.extend(float(y) for y in b[j:])
    return Containment(not unmatched, tuple(unmatched), tuple(leftover))


def same_spectrum(s1, s2, tol: float = EIG_TOL) -> Containment:
    res = spectrum_contained(s1, s2, tol)
    return Containment(res.contained and not res.leftover, res.unmatched, res.leftover)


def fiedler_vector(lap: np.ndarray, tol: float = EIG_TOL) -> tuple[float, np.ndarray]:
    """Eigenpair of the smallest eigenvalue outside the numerical-zero cluster.

    The vector is sign-normalised so its first entry above ``tol`` in
    magnitude is positive. Raises Disconnected if zero is repeated.
    """
    spec = sym_eig(lap)
    clusters = eigenvalue_clusters(spec, tol)
    gap = _gap(spec.eigenvalues, tol)
    zero = clusters[0] if clusters and min(abs(x) for x in clusters[0].members) <= gap else None
    zero_mult = zero.multiplicity if zero else 0
    if zero_mult > 1:
        raise Disconnected(zero_mult)
    if len(spec) <= zero_mult:
        raise ValueError("Laplacian has no nonzero eigenvalue")
    idx = zero_mult
    x = spec.eigenvectors[:, idx].copy()
    big = np.flatnonzero(np.abs(x) > tol)
    if big.size and x[big[0]] < 0:
        x = -x
    return float(spec.eigenvalues[idx]), x


def verify_s_relations(h: "core.WeightedHypergraph", tol: float = RESIDUAL_TOL) -> list[Check]:
    """Check the eigen-relations linking the normalized adjacency, T and the normalized Laplacian.

    For each eigenpair (lam, v) of the normalized adjacency: v itself, the
    right eigenvector D_A^{-1/2} v and left eigenvector v^T D_A^{1/2} of T,
    and v as an eigenvector of the normalized Laplacian for 1 - lam.
    """
    theorem = "transition / normalized-Laplacian equivalences"
    a_tilde = core.normalized_adjacency(h)  # raises ZeroAdjacencyDegree
    t = core.transition_matrix(h)
    nl = core.normalized_laplacian(h)
    d = core.adjacency_matrix(h).sum(axis=1)
    half, inv_half = np.sqrt(d), 1.0 / np.sqrt(d)

    spec = sym_eig(a_tilde, tol)
    vals, vecs = spec.eigenvalues, spec.eigenvectors
    right = inv_half[:, None] * vecs
    left = half[:, None] * vecs
    r1 = np.abs(a_tilde @ vecs - vecs * vals).max()
    r2 = np.abs(t.T @ left - left * vals).max()
    r3 = np.abs(t @ right - right * vals).max()
    r4 = np.abs(nl @ vecs - vecs * (1.0 - vals)).max()
    similarity = np.abs(half[:, None] * t * inv_half[None, :] - a_tilde).max()
    # D_A^{-1/2} V is invertible, so its columns give the full spectrum of T
    basis = np.linalg.cond(right)
    nl_spec = sym_eig(nl, tol)
    shifted = same_spectrum(1.0 - vals, nl_spec, EIG_TOL)
    ones = np.ones(h.n_vertices)
    return [
        Check.bound("S.1 eigenpairs of normalized adjacency", theorem, r1, tol),
        Check.bound("S.2 left eigenvectors of T", theorem, r2, tol),
        Check.bound("S.3 right eigenvectors of T", theorem, r3, tol),
        Check.bound("S.4 normalized Laplacian eigenpairs at 1 - lambda", theorem, r4, tol),
        Check.bound("T similar to normalized adjacency via D_A^{1/2}", theorem, similarity, tol),
        Check.truth("sigma(T) = sigma(normalized adjacency)", theorem, bool(np.isfinite(basis) and basis < 1e12),
                    note=f"cond(D_A^-1/2 V) = {basis:.3e}"),
        Check.truth("sigma(normalized Laplacian) = 1 - sigma(normalized adjacency)", theorem, shifted.contained,
                    note="" if shifted.contained else f"unmatched {shifted.unmatched}, leftover {shifted.leftover}"),
        Check.bound("T is row-stochastic", theorem, np.abs(t @ ones - ones).max(), tol),
    ]
