"""q- and q*-reductions of a hypergraph around a validated hyperstar.

Removing q of the m leaves leaves a smaller hypergraph whose reweighted
adjacency ``S = M^{1/2} B M^{1/2}`` is the compression ``K^T A K`` of the
original adjacency by a matrix ``K`` with orthonormal columns. Every
eigenpair of S lifts to an eigenpair of A through K; the q eigenvalues that
disappear are the repeated ones planted by the star.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import core, spectral
from .core import Edge, WeightedHypergraph, _mirror_upper
from .errors import DimensionMismatch, InvalidPlan, NotUniform
from .hyperstar import HyperstarWitness, format_witness, star_summary, validate_witness
from .report import Check

Q, Q_STAR = "q", "q_star"

THM_ADJ = {Q: "adjacency q-reduction theorem", Q_STAR: "adjacency q*-reduction theorem"}
THM_LAP = {Q: "Laplacian q-reduction theorem", Q_STAR: "Laplacian q*-reduction theorem"}
INTERLACING = "Cauchy interlacing lemma"

SHRINK, GROW = "(m-q)/m", "m/(m-q)"


@dataclass(frozen=True)
class ReductionPlan:
    witness: HyperstarWitness
    removed: tuple[int, ...]
    mode: str = Q

    def __post_init__(self):
        removed = tuple(sorted(set(int(v) for v in self.removed)))
        object.__setattr__(self, "removed", removed)
        if self.mode not in (Q, Q_STAR):
            raise InvalidPlan(f"unknown reduction mode {self.mode!r}")
        if not set(removed) <= set(self.witness.v1):
            raise InvalidPlan(f"removed vertices {removed} are not all leaves of the star {self.witness.v1}")
        if not 0 < len(removed) < self.witness.m:
            raise InvalidPlan(f"need 0 < q < m, got q={len(removed)}, m={self.witness.m}")
        if self.mode == Q_STAR and not self.witness.uniform:
            raise NotUniform("q*-reduction needs a p-uniform star")

    @property
    def q(self) -> int:
        return len(self.removed)

    @property
    def m(self) -> int:
        return self.witness.m

    @property
    def surviving_leaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.witness.v1 if v not in self.removed)

    def describe(self) -> str:
        return f"mode={self.mode} removed={','.join(map(str, self.removed))}"


@dataclass(frozen=True)
class MassMatrices:
    """Diagonals of the mass matrices.

    ``vertex`` is the mass used to symmetrise B. ``edge`` is the q* edge mass
    (None for q mode). ``class_size`` holds m/(m-q) on surviving leaves: the
    squared column norms of the fractional characteristic matrix.
    """

    vertex: np.ndarray
    edge: np.ndarray | None
    class_size: np.ndarray


def fractional_characteristic(n: int, surviving: tuple[int, ...], leaves_kept: tuple[int, ...],
                              leaves_removed: tuple[int, ...]) -> np.ndarray:
    """Orthonormal-column N x (N-q) matrix K mapping reduced into original vertices.

    Non-leaf vertices map to themselves. On the star leaves K is the
    m x r block ``P_r + J / sqrt(m r)`` (kept rows) stacked on
    ``J / sqrt(m r)`` (removed rows), with r = m - q and P_r the centering
    projector. Each leaf column then sums to sqrt(m / r), every leaf row sums
    to sqrt(r / m), and ``K^T K = I``. For q = m - 1 this is the plain
    characteristic matrix of "all leaves in one class", scaled to unit norm.
    """
    m = len(leaves_kept) + len(leaves_removed)
    r = len(leaves_kept)
    col = {v: j for j, v in enumerate(surviving)}
    k = np.zeros((n, len(surviving)))
    for v in surviving:
        if v not in leaves_kept:
            k[v - 1, col[v]] = 1.0
    block = np.full((m, r), 1.0 / np.sqrt(m * r))
    block[:r, :] += np.eye(r) - 1.0 / r
    rows = [v - 1 for v in (*leaves_kept, *leaves_removed)]
    cols = [col[v] for v in leaves_kept]
    k[np.ix_(rows, cols)] = block
    return k


@dataclass(frozen=True)
class ReducedPair:
    original: WeightedHypergraph
    reduced: WeightedHypergraph
    plan: ReductionPlan | None
    masses: MassMatrices
    B: np.ndarray
    K: np.ndarray
    surviving: tuple[int, ...]

    @classmethod
    def identity(cls, h: WeightedHypergraph) -> "ReducedPair":
        """The trivial pairing of a hypergraph with itself (K = I, unit masses)."""
        n = h.n_vertices
        ones = np.ones(n)
        return cls(h, h, None, MassMatrices(ones, None, ones), core.adjacency_matrix(h), np.eye(n), tuple(h.vertices))

    @property
    def mode(self) -> str:
        return self.plan.mode if self.plan else Q

    @cached_property
    def A(self) -> np.ndarray:
        return core.adjacency_matrix(self.original)

    @cached_property
    def sym(self) -> np.ndarray:
        """``M^{1/2} B M^{1/2}``, similar to ``M B``."""
        r = np.sqrt(self.masses.vertex)
        return _mirror_upper(r[:, None] * self.B * r[None, :])

    @cached_property
    def mass_B(self) -> np.ndarray:
        return self.masses.vertex[:, None] * self.B

    @cached_property
    def reduced_degrees(self) -> np.ndarray:
        """Row sums of the quotient matrix ``C^{-1/2} S C^{1/2}`` (C = class sizes).

        In q mode this is ``B M 1``, in q* mode ``M* B 1``; either way it
        equals the original adjacency degrees of the surviving vertices.
        """
        c = np.sqrt(self.masses.class_size)
        return (self.sym @ c) / c

    @cached_property
    def lap_sym(self) -> np.ndarray:
        """``diag(reduced degrees) - M^{1/2} B M^{1/2}``."""
        return np.diag(self.reduced_degrees) - self.sym

    @cached_property
    def lap_mass(self) -> np.ndarray:
        """``diag(reduced degrees) - M B``, similar to :attr:`lap_sym` via ``M^{1/2}``."""
        return np.diag(self.reduced_degrees) - self.mass_B

    @cached_property
    def characteristic(self) -> np.ndarray:
        """Fractional characteristic matrix ``K C^{1/2}``; its Gram matrix is C."""
        return self.K * np.sqrt(self.masses.class_size)[None, :]

    def original_index(self, reduced_vertex: int) -> int:
        return self.surviving[reduced_vertex - 1]


def _check_host(h: WeightedHypergraph, plan: ReductionPlan, tol: float) -> None:
    res = validate_witness(h, plan.witness, tol)
    if not res:
        raise InvalidPlan(f"star witness is invalid ({res.bullet}): {res.detail}")


def _relabel(h: WeightedHypergraph, removed: tuple[int, ...], edges) -> tuple[WeightedHypergraph, tuple[int, ...]]:
    gone = set(removed)
    surviving = tuple(v for v in h.vertices if v not in gone)
    new_id = {v: i + 1 for i, v in enumerate(surviving)}
    reduced = WeightedHypergraph(len(surviving), tuple(Edge(tuple(new_id[v] for v in vs), w) for vs, w in edges))
    return reduced, surviving


def _masses(plan: ReductionPlan, surviving, vertex_ratio: float, edge=None) -> MassMatrices:
    kept = set(plan.surviving_leaves)
    grow = plan.m / (plan.m - plan.q)
    vertex = np.array([vertex_ratio if v in kept else 1.0 for v in surviving])
    cls = np.array([grow if v in kept else 1.0 for v in surviving])
    return MassMatrices(vertex, edge, cls)


def q_reduce(h: WeightedHypergraph, plan: ReductionPlan, tol: float = spectral.EIG_TOL) -> ReducedPair:
    """Remove the planned leaves and shrink every edge through them.

    Weights are unchanged. An edge that would become empty is dropped with a
    warning (impossible for star edges, whose core part survives).
    """
    if plan.mode != Q:
        raise InvalidPlan(f"q_reduce needs mode {Q!r}, got {plan.mode!r}")
    _check_host(h, plan, tol)
    gone = set(plan.removed)
    edges = []
    for i, (vs, w) in enumerate(h.edges):
        rest = tuple(v for v in vs if v not in gone)
        if not rest:
            warnings.warn(f"edge {i} lies inside the removed set and is dropped", stacklevel=2)
            continue
        edges.append((rest, w))
    reduced, surviving = _relabel(h, plan.removed, edges)
    masses = _masses(plan, surviving, plan.m / (plan.m - plan.q))
    k = fractional_characteristic(h.n_vertices, surviving, plan.surviving_leaves, plan.removed)
    return ReducedPair(h, reduced, plan, masses, core.adjacency_matrix(reduced), k, surviving)


def q_star_reduce(h: WeightedHypergraph, plan: ReductionPlan, tol: float = spectral.EIG_TOL,
                  vertex_mass: str = SHRINK) -> ReducedPair:
    """Remove the planned leaves together with every edge containing them.

    The surviving star edges are reweighted by the edge mass m/(m-q) inside
    ``B = sqrt(I) N sqrt(I)^T - diag(...)``. ``vertex_mass`` selects the leaf
    vertex mass: ``"(m-q)/m"`` (default) is the one for which
    ``M^{1/2} B M^{1/2} = K^T A K``; ``"m/(m-q)"`` is kept for comparison.
    """
    if plan.mode != Q_STAR:
        raise InvalidPlan(f"q_star_reduce needs mode {Q_STAR!r}, got {plan.mode!r}")
    p = plan.witness.uniform
    if not core.is_uniform(h, p):
        raise NotUniform(f"host hypergraph is not {p}-uniform")
    if vertex_mass not in (SHRINK, GROW):
        raise ValueError(f"vertex_mass must be {SHRINK!r} or {GROW!r}")
    _check_host(h, plan, tol)
    gone = set(plan.removed)
    kept_leaves = set(plan.surviving_leaves)
    grow = plan.m / (plan.m - plan.q)
    edges, edge_mass = [], []
    for vs, w in h.edges:
        if gone.intersection(vs):
            continue
        edges.append((vs, w))
        edge_mass.append(grow if kept_leaves.intersection(vs) else 1.0)
    reduced, surviving = _relabel(h, plan.removed, edges)
    edge_mass = np.array(edge_mass)
    root = np.sqrt(core.build_incidence(reduced))
    b = _mirror_upper((root * edge_mass[None, :]) @ root.T)
    np.fill_diagonal(b, 0.0)
    ratio = (plan.m - plan.q) / plan.m if vertex_mass == SHRINK else grow
    masses = _masses(plan, surviving, ratio, edge_mass)
    k = fractional_characteristic(h.n_vertices, surviving, plan.surviving_leaves, plan.removed)
    return ReducedPair(h, reduced, plan, masses, b, k, surviving)


def reduce(h: WeightedHypergraph, plan: ReductionPlan, tol: float = spectral.EIG_TOL, **kw) -> ReducedPair:
    return q_reduce(h, plan, tol) if plan.mode == Q else q_star_reduce(h, plan, tol, **kw)


def lift_eigenvector(pair: ReducedPair, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (pair.K.shape[1],):
        raise DimensionMismatch(f"expected a vector of length {pair.K.shape[1]}, got shape {x.shape}")
    return pair.K @ x


# --- verification ----------------------------------------------------------

def _interlacing_violation(big: np.ndarray, small: np.ndarray) -> float:
    a = np.sort(big)[::-1]
    b = np.sort(small)[::-1]
    na, nb = a.size, b.size
    worst = 0.0
    for v in range(nb):
        worst = max(worst, b[v] - a[v], a[na - nb + v] - b[v])
    return worst


def _gap_check(name, theorem, leftover, expected_value, q, spec_scale, tol) -> Check:
    gap = tol * max(1.0, spec_scale)
    ok = len(leftover) == q and all(abs(x - expected_value) <= gap for x in leftover)
    note = f"dropped eigenvalues {[round(x, 12) + 0.0 for x in leftover]}, expected {q} x {expected_value:.12g}"
    return Check.truth(name, theorem, ok, note)


def _literal_equality(name, theorem, big, small, tol) -> Check:
    same = spectral.same_spectrum(small, big, tol)
    if same.contained:
        return Check(name, theorem, "pass", None, "spectra coincide as multisets")
    return Check.skip(name, theorem, (
        f"literal equality not asserted: {len(big)} vs {len(small)} eigenvalues, "
        f"unmatched extra eigenvalues {[round(x, 12) + 0.0 for x in same.leftover]}"))


def _removed_count(pair: ReducedPair) -> int:
    return pair.plan.q if pair.plan else 0


def verify_adjacency_reduction(pair: ReducedPair, tol: float = spectral.RESIDUAL_TOL) -> list[Check]:
    """Compression, containment, zero-gap, lifting and interlacing checks for A."""
    thm = THM_ADJ[pair.mode]
    k, a, s = pair.K, pair.A, pair.sym
    q = _removed_count(pair)
    out = [
        Check.bound("K^T K = I", thm, np.abs(k.T @ k - np.eye(k.shape[1])).max(), tol),
        Check.bound("M^1/2 B M^1/2 = K^T A K", thm, np.abs(s - k.T @ a @ k).max(), tol),
    ]
    spec_a = spectral.sym_eig(a)
    spec_s = spectral.sym_eig(s)
    scale = max(spec_a.radius, spec_s.radius)
    cont = spectral.spectrum_contained(spec_s, spec_a, tol)
    out.append(Check.truth("sigma(M B) contained in sigma(A)", thm, cont.contained,
                           note="" if cont else f"unmatched {cont.unmatched}"))
    out.append(_gap_check("sigma(A) minus sigma(M B) is q zeros", thm, cont.leftover, 0.0, q, scale, tol))
    zero_gap = spectral.multiplicity(spec_a, 0.0, tol) - spectral.multiplicity(spec_s, 0.0, tol)
    out.append(Check.truth("zero multiplicity drops by exactly q", thm, zero_gap == q,
                           note=f"m_A(0) - m_MB(0) = {zero_gap}, q = {q}"))
    lifted = k @ spec_s.eigenvectors
    out.append(Check.bound("A K x = mu K x for every eigenpair of M^1/2 B M^1/2", thm,
                           np.abs(a @ lifted - lifted * spec_s.eigenvalues).max(), tol))
    out.append(Check.bound("eigenvalues of K^T A K interlace those of A", INTERLACING,
                           max(_interlacing_violation(spec_a.eigenvalues, spec_s.eigenvalues) - tol * max(1.0, scale), 0.0),
                           0.0, note="residual is the worst violation beyond tolerance"))
    out.append(Check.bound("K (M^1/2 B M^1/2) = A K", thm, np.abs(k @ s - a @ k).max(), tol))
    out.append(_literal_equality("sigma(A) = sigma(M B) literally", thm, spec_a.eigenvalues, spec_s.eigenvalues, tol))
    return out


def verify_laplacian_reduction(pair: ReducedPair, tol: float = spectral.RESIDUAL_TOL) -> list[Check]:
    """Containment, lifting and similarity checks for the Laplacian reduction."""
    thm = THM_LAP[pair.mode]
    k = pair.K
    lap_a = core.laplacian(pair.original)
    lt = pair.lap_sym
    q = _removed_count(pair)
    spec_l = spectral.sym_eig(lap_a)
    spec_t = spectral.sym_eig(lt)
    scale = max(spec_l.radius, spec_t.radius)
    cont = spectral.spectrum_contained(spec_t, spec_l, tol)
    out = [Check.truth("sigma(L~(M B)) contained in sigma(L(A))", thm, cont.contained,
                       note="" if cont else f"unmatched {cont.unmatched}")]
    if pair.plan:
        w = star_summary(pair.original, pair.plan.witness).weight
        out.append(_gap_check("sigma(L(A)) minus sigma(L~(M B)) is q copies of the star weight", thm,
                              cont.leftover, w, q, scale, tol))
    lifted = k @ spec_t.eigenvectors
    out.append(Check.bound("L(A) K x = lambda K x for every eigenpair of L~(M B)", thm,
                           np.abs(lap_a @ lifted - lifted * spec_t.eigenvalues).max(), tol))
    r = np.sqrt(pair.masses.vertex)
    out.append(Check.bound("M^-1/2 L(M B) M^1/2 = L~(M B)", thm,
                           np.abs(pair.lap_mass * (r[None, :] / r[:, None]) - lt).max(), tol))
    d_a = lap_a.diagonal()
    out.append(Check.bound("diag(A) K = K diag(M B)", thm,
                           np.abs(d_a[:, None] * k - k * pair.reduced_degrees[None, :]).max(), tol))
    out.append(_literal_equality("sigma(L(A)) = sigma(L(M B)) literally", thm, spec_l.eigenvalues, spec_t.eigenvalues, tol))
    return out


def format_reduced(pair: ReducedPair) -> str:
    header = ["reduced hypergraph"]
    if pair.plan:
        header.append(f"plan {pair.plan.describe()}")
        header.append(format_witness(pair.plan.witness))
    header.append("vertex map " + " ".join(f"{i}={v}" for i, v in enumerate(pair.surviving, start=1)))
    return core.format_hypergraph(pair.reduced, header)
