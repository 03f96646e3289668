"""(m,k)-hyperstars: witnesses, validation, detection and planted fixtures.

A star is described by its leaf set ``v1`` (mutually non-adjacent vertices),
its core ``v2``, and for every leaf the family of core subsets it is joined
to through the star edges. The leaves of a valid star all have the same
adjacency row, which is what produces the repeated eigenvalues.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from . import core, spectral
from .core import WeightedHypergraph
from .errors import InfeasibleProfile, OverlappingStars, ParseError, UnbalancedWeight
from .report import Check

HS, GHS = "HS", "GHS"

LEMMA_ADJ = "star adjacency-kernel lemma"
LEMMA_LAP = "star Laplacian-eigenvalue lemma"
THM_WEIGHT = "weight-class multiplicity theorem"
COR_NORM = "normalized-Laplacian multiplicity corollary"
COR_TRANS = "transition-matrix multiplicity corollary"


@dataclass(frozen=True)
class HyperstarWitness:
    """A claimed star inside a host hypergraph.

    ``partition`` maps each leaf to its family of core subsets, and
    ``star_edges`` indexes the host edges ``{leaf} | subset``. ``uniform``
    carries p for a p-uniform star (which is also an HS).
    """

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    star_edges: tuple[int, ...]
    partition: Mapping[int, tuple[frozenset, ...]] = field(compare=False)
    kind: str = GHS
    uniform: int | None = None

    @property
    def m(self) -> int:
        return len(self.v1)

    @property
    def k(self) -> int:
        return len(self.v2)

    @property
    def degree(self) -> int:
        return self.m - 1

    @property
    def label(self) -> str:
        return f"UHS({self.uniform})" if self.uniform else self.kind


class StarSummary(NamedTuple):
    degree: int
    weight: float


class ValidationResult(NamedTuple):
    ok: bool
    bullet: str | None = None
    detail: str = ""
    vertex: int | None = None

    def __bool__(self):
        return self.ok


class MultiplicityClaim(NamedTuple):
    matrix_kind: str
    eigenvalue: float
    min_multiplicity: int
    source: str


def _weight_tol(h: WeightedHypergraph, tol: float) -> float:
    wmax = max((e.weight for e in h.edges), default=1.0)
    return tol * max(1.0, wmax)


def _leaf_profiles(h: WeightedHypergraph, wit: HyperstarWitness) -> dict[int, dict[int, float]]:
    # per-leaf aggregate weight seen by each core vertex through the star edges
    sums = {v: {u: 0.0 for u in wit.v2} for v in wit.v1}
    for i in wit.star_edges:
        vs, w = h.edges[i]
        leaves = [v for v in vs if v in sums]
        if len(leaves) != 1:
            continue
        for u in vs:
            if u != leaves[0] and u in sums[leaves[0]]:
                sums[leaves[0]][u] += w
    return sums


def _edge_families(h: WeightedHypergraph, wit: HyperstarWitness) -> dict[int, list[tuple[tuple[int, ...], float]]]:
    fams: dict[int, list] = {v: [] for v in wit.v1}
    for i in wit.star_edges:
        vs, w = h.edges[i]
        for v in vs:
            if v in fams:
                fams[v].append((tuple(u for u in vs if u != v), w))
    return {v: sorted(f) for v, f in fams.items()}


def _is_hs(h: WeightedHypergraph, wit: HyperstarWitness, tol: float) -> tuple[bool, str]:
    fams = _edge_families(h, wit)
    ref_leaf = wit.v1[0]
    ref = fams[ref_leaf]
    wtol = _weight_tol(h, tol)
    for v in wit.v1[1:]:
        if [s for s, _ in fams[v]] != [s for s, _ in ref]:
            return False, f"families of leaves {ref_leaf} and {v} differ"
        for (s, w1), (_, w2) in zip(ref, fams[v]):
            if abs(w1 - w2) > wtol:
                return False, f"edge {set(s)} has weight {w1:g} at leaf {ref_leaf} but {w2:g} at leaf {v}"
    return True, ""


def witness_from_leaves(h: WeightedHypergraph, leaves: Sequence[int], kind: str | None = None,
                        uniform: int | None = None, tol: float = spectral.EIG_TOL) -> HyperstarWitness:
    """Build the witness induced by a leaf set.

    Star edges are all edges of size >= 2 through a leaf, and the core is the
    union of their other vertices. When ``kind`` is None the witness is
    classified as HS or GHS, and tagged p-uniform when that applies.
    """
    v1 = tuple(sorted(set(int(v) for v in leaves)))
    leafset = set(v1)
    star, v2 = [], set()
    partition: dict[int, list[frozenset]] = {v: [] for v in v1}
    for i, (vs, _) in enumerate(h.edges):
        hit = [v for v in vs if v in leafset]
        if not hit or len(vs) < 2:
            continue
        star.append(i)
        for v in hit:
            rest = frozenset(vs) - {v}
            partition[v].append(rest)
            v2 |= rest
    wit = HyperstarWitness(v1, tuple(sorted(v2)), tuple(star),
                           {v: tuple(p) for v, p in partition.items()}, kind or GHS, uniform)
    if kind is not None:
        return wit
    hs, _ = _is_hs(h, wit, tol) if v1 else (False, "")
    p = None
    if hs and core.is_uniform(h):
        size = core.rank_antirank(h)[0]
        if all(len(s) == size - 1 for fam in wit.partition.values() for s in fam):
            p = size
    return HyperstarWitness(wit.v1, wit.v2, wit.star_edges, wit.partition, HS if hs else GHS, p)


def validate_witness(h: WeightedHypergraph, wit: HyperstarWitness, tol: float = spectral.EIG_TOL) -> ValidationResult:
    """Check a witness against the star conditions, stopping at the first violation."""
    n, m = h.n_vertices, h.n_edges
    v1, v2 = set(wit.v1), set(wit.v2)
    if not wit.v1 or not wit.v2:
        return ValidationResult(False, "indices", "V1 and V2 must be nonempty")
    if len(v1) != len(wit.v1) or len(v2) != len(wit.v2):
        return ValidationResult(False, "indices", "repeated vertex in V1 or V2")
    bad = [v for v in (*wit.v1, *wit.v2) if not 1 <= v <= n]
    if bad:
        return ValidationResult(False, "indices", f"vertex {bad[0]} outside 1..{n}", bad[0])
    bad = [i for i in wit.star_edges if not 0 <= i < m]
    if bad:
        return ValidationResult(False, "indices", f"edge index {bad[0]} outside 0..{m - 1}")
    if len(set(wit.star_edges)) != len(wit.star_edges):
        return ValidationResult(False, "indices", "repeated star edge index")

    common = sorted(v1 & v2)
    if common:
        return ValidationResult(False, "disjoint", f"vertex {common[0]} is in both V1 and V2", common[0])

    if set(wit.partition) != v1:
        return ValidationResult(False, "cover", "partition keys differ from V1")
    for v in wit.v1:
        fam = wit.partition[v]
        for s in fam:
            if not s or not set(s) <= v2:
                return ValidationResult(False, "cover", f"leaf {v} has a subset {sorted(s)} not inside V2", v)
        covered = set().union(*fam) if fam else set()
        if covered != v2:
            missing = sorted(v2 - covered)
            return ValidationResult(False, "cover", f"leaf {v} does not reach core vertex {missing[0]}", v)

    expected = Counter(tuple(sorted(s | {v})) for v in wit.v1 for s in wit.partition[v])
    actual = Counter(h.edges[i].vertices for i in wit.star_edges)
    if expected != actual:
        diff = sorted((expected - actual) + (actual - expected))
        return ValidationResult(False, "star-edges", f"star edges do not match the leaf families, e.g. {list(diff[0])}")

    profiles = _leaf_profiles(h, wit)
    wtol = _weight_tol(h, tol)
    ref = wit.v1[0]
    for u in wit.v2:
        for v in wit.v1[1:]:
            a, b = profiles[ref][u], profiles[v][u]
            if abs(a - b) > wtol:
                return ValidationResult(
                    False, "balance",
                    f"core vertex {u} sees weight {a:g} from leaf {ref} but {b:g} from leaf {v}", u)

    star = set(wit.star_edges)
    for i, (vs, _) in enumerate(h.edges):
        if i in star or len(vs) < 2:
            continue
        hit = v1.intersection(vs)
        if hit:
            leaf = min(hit)
            return ValidationResult(False, "isolation", f"non-star edge {i} joins leaf {leaf} to {list(vs)}", leaf)

    if wit.kind == HS or wit.uniform:
        ok, why = _is_hs(h, wit, tol)
        if not ok:
            return ValidationResult(False, "identical-families", why)
    if wit.uniform:
        p = wit.uniform
        for v in wit.v1:
            for s in wit.partition[v]:
                if len(s) != p - 1:
                    return ValidationResult(False, "uniform-size", f"leaf {v} subset {sorted(s)} does not have {p - 1} vertices", v)
    return ValidationResult(True)


def star_summary(h: WeightedHypergraph, wit: HyperstarWitness, tol: float = spectral.EIG_TOL) -> StarSummary:
    """Degree m - 1 and the weight seen from any single leaf."""
    per_leaf = {v: sum(prof.values()) for v, prof in _leaf_profiles(h, wit).items()}
    weight = per_leaf[wit.v1[0]]
    wtol = _weight_tol(h, tol) * max(1, wit.k)
    for v, w in per_leaf.items():
        if abs(w - weight) > wtol:
            raise UnbalancedWeight(f"leaf {v} has star weight {w:g}, leaf {wit.v1[0]} has {weight:g}")
    return StarSummary(wit.degree, weight)


def detect_hyperstars(h: WeightedHypergraph, tol: float = spectral.EIG_TOL) -> list[HyperstarWitness]:
    """Find maximal stars by grouping vertices with equal adjacency rows.

    Two vertices belong to the same leaf class when they have the same
    neighbour set and the same aggregate weight to every neighbour. Such
    vertices cannot share an edge, and every edge through them lies inside
    their common neighbourhood, which becomes the core.
    """
    a = core.adjacency_matrix(h)
    wtol = _weight_tol(h, tol)
    buckets: dict[tuple[int, ...], list[int]] = {}
    for i in range(h.n_vertices):
        support = tuple(np.flatnonzero(a[i] > 0))
        if support:
            buckets.setdefault(support, []).append(i)

    out = []
    for support, members in buckets.items():
        cols = list(support)
        parent = {i: i for i in members}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for x_idx, x in enumerate(members):
            for y in members[x_idx + 1:]:
                if np.abs(a[x, cols] - a[y, cols]).max() <= wtol:
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        classes: dict[int, list[int]] = {}
        for x in members:
            classes.setdefault(find(x), []).append(x + 1)
        for leaves in classes.values():
            if len(leaves) < 2:
                continue
            wit = witness_from_leaves(h, leaves, tol=tol)
            if validate_witness(h, wit, tol):
                out.append(wit)
    out.sort(key=lambda w: w.v1[0])
    return out


def _overlaps(witnesses: Sequence[HyperstarWitness]) -> list[tuple[int, int]]:
    pairs = []
    for i, a in enumerate(witnesses):
        for j in range(i + 1, len(witnesses)):
            if set(a.v1) & set(witnesses[j].v1):
                pairs.append((i, j))
    return pairs


def claims_from_stars(h: WeightedHypergraph, witnesses: Sequence[HyperstarWitness],
                      tol: float = spectral.EIG_TOL) -> list[MultiplicityClaim]:
    """Lower bounds on eigenvalue multiplicities implied by validated stars.

    Stars are grouped by weight; the Laplacian bound for each weight is the
    sum of the degrees in its group. The normalized Laplacian and transition
    claims are omitted when some vertex has zero adjacency degree.
    """
    if not witnesses:
        return []
    if _overlaps(witnesses):
        warnings.warn("stars with intersecting leaf sets; degree sums may overcount", OverlappingStars, stacklevel=2)
    summaries = [star_summary(h, w, tol) for w in witnesses]
    total = sum(s.degree for s in summaries)
    claims = [MultiplicityClaim("adjacency", 0.0, total, LEMMA_ADJ)]

    wtol = _weight_tol(h, tol)
    groups: list[list[StarSummary]] = []
    for s in sorted(summaries, key=lambda s: s.weight):
        if groups and abs(s.weight - groups[-1][-1].weight) <= wtol * max(1.0, s.weight):
            groups[-1].append(s)
        else:
            groups.append([s])
    for g in groups:
        source = LEMMA_LAP if len(g) == 1 else THM_WEIGHT
        claims.append(MultiplicityClaim("laplacian", g[0].weight, sum(s.degree for s in g), source))

    if np.all(core.degrees(h).adjacency > 0):
        claims.append(MultiplicityClaim("normalized", 1.0, total, COR_NORM))
        claims.append(MultiplicityClaim("transition", 0.0, total, COR_TRANS))
    return claims


def matrix_spectrum(h: WeightedHypergraph, kind: str, tol: float = spectral.RESIDUAL_TOL) -> spectral.SymSpectrum:
    """Spectrum of one of the four hypergraph matrices.

    The transition matrix is handled through the symmetric normalized
    adjacency, which is similar to it.
    """
    if kind == "adjacency":
        m = core.adjacency_matrix(h)
    elif kind == "laplacian":
        m = core.laplacian(h)
    elif kind == "normalized":
        m = core.normalized_laplacian(h)
    elif kind == "transition":
        m = core.normalized_adjacency(h)
    else:
        raise ValueError(f"unknown matrix kind {kind!r}")
    return spectral.sym_eig(m, tol)


def check_claims(h: WeightedHypergraph, claims: Sequence[MultiplicityClaim], tol: float = spectral.RESIDUAL_TOL) -> list[Check]:
    cache: dict[str, spectral.SymSpectrum] = {}
    out = []
    for c in claims:
        if c.matrix_kind not in cache:
            cache[c.matrix_kind] = matrix_spectrum(h, c.matrix_kind)
        got = spectral.multiplicity(cache[c.matrix_kind], c.eigenvalue, tol)
        out.append(Check.truth(
            f"{c.matrix_kind} eigenvalue {c.eigenvalue:.12g} multiplicity >= {c.min_multiplicity}",
            c.source, got >= c.min_multiplicity, note=f"found {got}"))
    return out


def kernel_vectors(wit: HyperstarWitness, n_vertices: int) -> np.ndarray:
    """Columns e_{v_i} - e_{v_{i+1}} for consecutive leaves."""
    out = np.zeros((n_vertices, max(wit.m - 1, 0)))
    for j in range(wit.m - 1):
        out[wit.v1[j] - 1, j] = 1.0
        out[wit.v1[j + 1] - 1, j] = -1.0
    return out


def star_kernel_checks(h: WeightedHypergraph, wit: HyperstarWitness, tol: float = spectral.RESIDUAL_TOL) -> list[Check]:
    """Residuals of the explicit leaf-difference eigenvectors."""
    if wit.m < 2:
        return [Check.skip("leaf-difference vectors", LEMMA_ADJ, "star has a single leaf")]
    x = kernel_vectors(wit, h.n_vertices)
    w = star_summary(h, wit, tol).weight
    a = core.adjacency_matrix(h)
    lap = core.laplacian(h)
    star = " ".join(map(str, wit.v1))
    out = [
        Check.bound(f"A x = 0 for leaf differences of star [{star}]", LEMMA_ADJ, np.abs(a @ x).max(), tol),
        Check.bound(f"L x = {w:.12g} x for leaf differences of star [{star}]", LEMMA_LAP,
                    np.abs(lap @ x - w * x).max(), tol),
    ]
    if np.all(a.sum(axis=1) > 0):
        t = core.transition_matrix(h)
        nl = core.normalized_laplacian(h)
        out.append(Check.bound(f"T x = 0 for leaf differences of star [{star}]", COR_TRANS, np.abs(t @ x).max(), tol))
        out.append(Check.bound(f"normalized L x = x for leaf differences of star [{star}]", COR_NORM,
                               np.abs(nl @ x - x).max(), tol))
    return out


# --- serialization ---------------------------------------------------------

def format_witness(wit: HyperstarWitness) -> str:
    def ids(xs):
        return ",".join(map(str, xs))
    return f"star kind={wit.label} v1={ids(wit.v1)} v2={ids(wit.v2)} edges={ids(wit.star_edges)}"


def parse_witness(line: str, h: WeightedHypergraph) -> HyperstarWitness:
    """Inverse of :func:`format_witness`; families are read off the host edges."""
    parts = line.split()
    if not parts or parts[0] != "star":
        raise ParseError(f"expected a 'star' line, got {line!r}")
    fields = {}
    for p in parts[1:]:
        key, sep, val = p.partition("=")
        if not sep:
            raise ParseError(f"bad field {p!r}")
        fields[key] = val
    try:
        v1 = tuple(int(x) for x in fields["v1"].split(","))
        v2 = tuple(int(x) for x in fields["v2"].split(","))
        edges = tuple(int(x) for x in fields["edges"].split(",")) if fields.get("edges") else ()
    except (KeyError, ValueError) as exc:
        raise ParseError(f"malformed star line {line!r}: {exc}") from None
    label = fields.get("kind", GHS)
    uniform = None
    if label.startswith("UHS"):
        try:
            uniform = int(label[3:].strip("()"))
        except ValueError:
            raise ParseError(f"bad kind {label!r}") from None
        kind = HS
    elif label in (HS, GHS):
        kind = label
    else:
        raise ParseError(f"unknown star kind {label!r}")
    for i in edges:
        if not 0 <= i < h.n_edges:
            raise ParseError(f"edge index {i} outside 0..{h.n_edges - 1}")
    leafset = set(v1)
    partition = {v: [] for v in v1}
    for i in edges:
        vs = h.edges[i].vertices
        for v in vs:
            if v in leafset:
                partition[v].append(frozenset(vs) - {v})
    return HyperstarWitness(v1, v2, edges, {v: tuple(p) for v, p in partition.items()}, kind, uniform)


def parse_witnesses(text: str, h: WeightedHypergraph) -> list[HyperstarWitness]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not line.startswith("star"):
            continue
        try:
            out.append(parse_witness(line, h))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return out


# --- planted fixtures ------------------------------------------------------

def _targets(m: int, k: int, profile) -> np.ndarray:
    core_ids = list(range(m + 1, m + k + 1))
    if isinstance(profile, Mapping):
        if set(profile) != set(core_ids):
            raise InfeasibleProfile(f"profile keys must be the core vertices {core_ids}")
        t = np.array([float(profile[u]) for u in core_ids])
    elif np.ndim(profile) == 0:
        t = np.full(k, float(profile))
    else:
        t = np.asarray(profile, dtype=float)
        if t.shape != (k,):
            raise InfeasibleProfile(f"profile needs {k} targets, got {t.shape}")
    if np.any(~(t > 0)) or not np.all(np.isfinite(t)):
        raise InfeasibleProfile("profile targets must be positive")
    return t


def _random_family(rng: np.random.Generator, targets: np.ndarray) -> list[tuple[tuple[int, ...], float]]:
    """Random covering family of core subsets whose per-vertex weight sums hit ``targets``."""
    k = targets.size
    residual = targets.copy()
    fam = []
    for _ in range(int(rng.integers(0, k + 1))):
        members = tuple(sorted(int(x) for x in rng.choice(k, size=int(rng.integers(1, k + 1)), replace=False)))
        cap = residual[list(members)].min()
        if cap <= 0:
            continue
        w = cap * rng.uniform(0.2, 0.9)
        fam.append((members, w))
        residual[list(members)] -= w
    if rng.random() < 0.5:
        members = tuple(sorted(int(x) for x in rng.choice(k, size=int(rng.integers(1, k + 1)), replace=False)))
        cap = residual[list(members)].min()
        if cap > 0:
            fam.append((members, cap))
            residual[list(members)] -= cap
    for u in range(k):
        if residual[u] > 1e-9 * targets[u]:
            fam.append(((u,), residual[u]))
    return fam


def _ranged_families(rng: np.random.Generator, m: int, k: int, weight_range) -> list[list[tuple[tuple[int, ...], float]]]:
    """Per-leaf families with every weight inside ``weight_range``.

    Each leaf gets random subsets, then singleton edges top every core vertex
    up to a common target that sits at least ``lo`` above the largest sum.
    Deficits above ``hi`` are split into equal pieces.
    """
    lo, hi = weight_range
    fams, sums = [], np.zeros((m, k))
    for v in range(m):
        fam = []
        for _ in range(int(rng.integers(1, k + 2))):
            members = tuple(sorted(int(x) for x in rng.choice(k, size=int(rng.integers(1, k + 1)), replace=False)))
            w = float(rng.uniform(lo, hi))
            fam.append((members, w))
            sums[v, list(members)] += w
        fams.append(fam)
    target = sums.max(axis=0) + rng.uniform(lo, hi, size=k)
    for v in range(m):
        for u in range(k):
            deficit = target[u] - sums[v, u]
            pieces = int(np.ceil(deficit / hi))
            fams[v].extend([((u,), deficit / pieces)] * pieces)
    return fams


def _attach_extras(rng, edges, pool: list[int], n_next: int, extra_vertices: int, extra_edges: int,
                   weight_range, size=None) -> int:
    lo, hi = weight_range
    pool = list(pool)
    for _ in range(extra_vertices):
        f = n_next
        n_next += 1
        k = (size - 1) if size else int(rng.integers(1, min(2, len(pool)) + 1))
        others = [pool[i] for i in rng.choice(len(pool), size=k, replace=False)]
        edges.append(((f, *others), rng.uniform(lo, hi)))
        pool.append(f)
    for _ in range(extra_edges):
        if len(pool) < (size or 2):
            break
        k = size if size else int(rng.integers(2, min(3, len(pool)) + 1))
        members = [pool[i] for i in rng.choice(len(pool), size=k, replace=False)]
        edges.append((tuple(members), rng.uniform(lo, hi)))
    return n_next


def synthesize_ghs(m: int, k: int, profile=1.0, seed: int = 0, *, extra_vertices: int = 0,
                   extra_edges: int = 0, identical: bool = False,
                   weight_range: tuple[float, float] = (0.1, 10.0)) -> tuple[WeightedHypergraph, HyperstarWitness]:
    """Plant a generalized (m,k)-hyperstar and return the host with its witness.

    Leaves are vertices 1..m, the core is m+1..m+k, and extra vertices come
    after. ``profile`` gives the aggregate weight each core vertex receives
    from every leaf (a scalar, a length-k sequence, or a map keyed by core
    vertex). With ``profile=None`` every star-edge weight is drawn from
    ``weight_range`` and the profile follows from the draw. Extra edges never
    touch a leaf.
    """
    if k < 1:
        raise InfeasibleProfile("the core needs at least one vertex")
    if m < 2:
        raise ValueError("a star needs at least two leaves")
    rng = np.random.default_rng(seed)
    core_ids = list(range(m + 1, m + k + 1))
    edges = []
    if profile is None:
        fams = _ranged_families(rng, 1 if identical else m, k, weight_range)
    else:
        targets = _targets(m, k, profile)
        fams = [_random_family(rng, targets) for _ in range(1 if identical else m)]
    for v in range(1, m + 1):
        fam = fams[0] if identical else fams[v - 1]
        for members, w in fam:
            edges.append(((v, *(core_ids[i] for i in members)), float(w)))
    n = _attach_extras(rng, edges, core_ids, m + k + 1, extra_vertices, extra_edges, weight_range) - 1
    h = WeightedHypergraph.from_edges(n, edges)
    return h, witness_from_leaves(h, range(1, m + 1), tol=spectral.EIG_TOL)


def synthesize_uhs(m: int, k: int, p: int = 3, seed: int = 0, *, extra_vertices: int = 0, extra_edges: int = 0,
                   weight_range: tuple[float, float] = (0.1, 10.0)) -> tuple[WeightedHypergraph, HyperstarWitness]:
    """Plant a p-uniform (m,k)-hyperstar in a p-uniform host."""
    if m < 2:
        raise ValueError("a star needs at least two leaves")
    if p < 2 or k < p - 1:
        raise InfeasibleProfile(f"a {p}-uniform star needs at least {p - 1} core vertices, got {k}")
    rng = np.random.default_rng(seed)
    lo, hi = weight_range
    core_ids = list(range(m + 1, m + k + 1))
    order = [core_ids[i] for i in rng.permutation(k)]
    family = []
    for start in range(0, k, p - 1):
        chunk = order[start:start + p - 1]
        if len(chunk) < p - 1:
            rest = [u for u in core_ids if u not in chunk]
            chunk = chunk + [rest[i] for i in rng.choice(len(rest), size=p - 1 - len(chunk), replace=False)]
        family.append(tuple(sorted(chunk)))
    for _ in range(int(rng.integers(0, 3))):
        family.append(tuple(sorted(core_ids[i] for i in rng.choice(k, size=p - 1, replace=False))))
    weights = rng.uniform(lo, hi, size=len(family))
    edges = [((v, *s), float(w)) for v in range(1, m + 1) for s, w in zip(family, weights)]
    n = _attach_extras(rng, edges, core_ids, m + k + 1, extra_vertices, extra_edges, weight_range, size=p) - 1
    h = WeightedHypergraph.from_edges(n, edges)
    return h, witness_from_leaves(h, range(1, m + 1), tol=spectral.EIG_TOL)
