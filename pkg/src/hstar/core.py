"""Weighted hypergraph data model and the matrices built from it.

Vertex ids are 1-based everywhere in the public API; matrix row ``i``
corresponds to vertex ``i + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import ParseError, ZeroAdjacencyDegree


class Edge(NamedTuple):
    vertices: tuple[int, ...]
    weight: float


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _mirror_upper(a: np.ndarray) -> np.ndarray:
    # Copies the strict upper triangle onto the lower one so that
    # a[i, j] == a[j, i] holds bitwise, independent of BLAS summation order.
    upper = np.triu(a, 1)
    return upper + upper.T + np.diag(np.diag(a))


@dataclass(frozen=True)
class WeightedHypergraph:
    """Vertex count plus an ordered multiset of weighted hyperedges.

    Duplicate edges are kept as distinct members. Instances are immutable,
    and the matrices derived from them are cached read-only arrays.
    """

    n_vertices: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.n_vertices, (int, np.integer)) or self.n_vertices < 1:
            raise ValueError(f"n_vertices must be a positive integer, got {self.n_vertices!r}")
        norm = []
        for idx, e in enumerate(self.edges):
            verts, weight = e
            vs = tuple(sorted({int(v) for v in verts}))
            if len(vs) != len(tuple(verts)):
                raise ValueError(f"edge {idx} repeats a vertex: {tuple(verts)}")
            if not vs:
                raise ValueError(f"edge {idx} is empty")
            if vs[0] < 1 or vs[-1] > self.n_vertices:
                raise ValueError(f"edge {idx} has a vertex outside 1..{self.n_vertices}: {vs}")
            w = float(weight)
            if not (w > 0 and math.isfinite(w)):
                raise ValueError(f"edge {idx} weight must be positive and finite, got {weight!r}")
            norm.append(Edge(vs, w))
        object.__setattr__(self, "n_vertices", int(self.n_vertices))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[tuple[Iterable[int], float]]) -> "WeightedHypergraph":
        return cls(n_vertices, tuple((tuple(v), w) for v, w in edges))

    @classmethod
    def from_incidence(cls, incidence: np.ndarray) -> "WeightedHypergraph":
        """Rebuild a hypergraph from an incidence matrix (one column per edge)."""
        inc = np.asarray(incidence, dtype=float)
        edges = []
        for j in range(inc.shape[1]):
            rows = np.flatnonzero(inc[:, j])
            if rows.size == 0:
                raise ValueError(f"column {j} is empty")
            vals = inc[rows, j]
            if not np.all(vals == vals[0]):
                raise ValueError(f"column {j} has unequal nonzero entries")
            edges.append((tuple(int(r) + 1 for r in rows), float(vals[0])))
        return cls.from_edges(inc.shape[0], edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    def edges_containing(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if v in e.vertices]

    def with_weight(self, edge_index: int, weight: float) -> "WeightedHypergraph":
        edges = list(self.edges)
        edges[edge_index] = Edge(edges[edge_index].vertices, weight)
        return WeightedHypergraph(self.n_vertices, tuple(edges))

    def scaled(self, factor: float) -> "WeightedHypergraph":
        return WeightedHypergraph(self.n_vertices, tuple(Edge(e.vertices, e.weight * factor) for e in self.edges))

    # cached matrices; see the module-level functions for definitions

    @cached_property
    def _incidence(self) -> np.ndarray:
        inc = np.zeros((self.n_vertices, self.n_edges))
        for j, (vs, w) in enumerate(self.edges):
            inc[[v - 1 for v in vs], j] = w
        return _frozen(inc)

    @cached_property
    def _adjacency(self) -> np.ndarray:
        root = np.sqrt(self._incidence)
        a = _mirror_upper(root @ root.T)
        # the diagonal of root @ root.T is d(v); subtracting D_v cancels it
        np.fill_diagonal(a, 0.0)
        return _frozen(a)


@dataclass(frozen=True)
class DegreeVectors:
    vertex: np.ndarray
    edge: np.ndarray
    adjacency: np.ndarray


def build_incidence(h: WeightedHypergraph) -> np.ndarray:
    """N x M matrix with entry (v, e) equal to w(e) when v is in e, else 0."""
    return h._incidence


def adjacency_matrix(h: WeightedHypergraph) -> np.ndarray:
    """Elementwise root product ``sqrt(H) sqrt(H)^T - D_v``.

    Off-diagonal entry (v, u) equals the total weight of edges containing
    both v and u. Edges with a single vertex only touch the diagonal and so
    vanish from the result.
    """
    return h._adjacency


def adjacency_by_edges(h: WeightedHypergraph) -> np.ndarray:
    """Adjacency by direct iteration over edges and vertex pairs."""
    a = np.zeros((h.n_vertices, h.n_vertices))
    for vs, w in h.edges:
        for i, v in enumerate(vs):
            for u in vs[i + 1:]:
                a[v - 1, u - 1] += w
                a[u - 1, v - 1] += w
    return a


def degrees(h: WeightedHypergraph) -> DegreeVectors:
    inc = h._incidence
    return DegreeVectors(
        vertex=inc.sum(axis=1),
        edge=np.array([len(vs) * w for vs, w in h.edges]),
        adjacency=h._adjacency.sum(axis=1),
    )


def laplacian(h: WeightedHypergraph) -> np.ndarray:
    a = adjacency_matrix(h)
    return np.diag(a.sum(axis=1)) - a


def _inv_sqrt_degrees(h: WeightedHypergraph) -> np.ndarray:
    d = adjacency_matrix(h).sum(axis=1)
    zero = np.flatnonzero(d <= 0)
    if zero.size:
        raise ZeroAdjacencyDegree(int(zero[0]) + 1)
    return 1.0 / np.sqrt(d)


def normalized_adjacency(h: WeightedHypergraph) -> np.ndarray:
    """``D_A^{-1/2} A D_A^{-1/2}``, the symmetric matrix similar to T."""
    s = _inv_sqrt_degrees(h)
    return _mirror_upper(s[:, None] * adjacency_matrix(h) * s[None, :])


def normalized_laplacian(h: WeightedHypergraph) -> np.ndarray:
    return np.eye(h.n_vertices) - normalized_adjacency(h)


def transition_matrix(h: WeightedHypergraph) -> np.ndarray:
    """Row-stochastic ``D_A^{-1} A``; not symmetric in general."""
    s = _inv_sqrt_degrees(h)
    return (s * s)[:, None] * adjacency_matrix(h)


def rank_antirank(h: WeightedHypergraph) -> tuple[int, int]:
    """Largest and smallest edge cardinality, (0, 0) for an edgeless hypergraph."""
    sizes = [len(e.vertices) for e in h.edges]
    if not sizes:
        return 0, 0
    return max(sizes), min(sizes)


def is_uniform(h: WeightedHypergraph, p: int | None = None) -> bool:
    if not h.edges:
        return False
    r, a = rank_antirank(h)
    return r == a and (p is None or r == p)


def connected_components(h: WeightedHypergraph) -> list[list[int]]:
    parent = list(range(h.n_vertices + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for vs, _ in h.edges:
        root = find(vs[0])
        for v in vs[1:]:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict[int, list[int]] = {}
    for v in h.vertices:
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda g: g[0])


def is_connected(h: WeightedHypergraph) -> bool:
    return len(connected_components(h)) == 1


# --- text format -----------------------------------------------------------

def format_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() and abs(w) < 1e15 else repr(float(w))


def format_hypergraph(h: WeightedHypergraph, header: Sequence[str] = ()) -> str:
    lines = [f"# {line}" if line else "#" for line in header]
    lines.append(f"vertices {h.n_vertices}")
    for vs, w in h.edges:
        lines.append("edge " + " ".join([format_weight(w), *map(str, vs)]))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> WeightedHypergraph:
    """Parse the line-oriented ``vertices N`` / ``edge W v1 .. vk`` format."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        if n is None:
            if key != "vertices" or len(parts) != 2:
                raise ParseError("expected 'vertices N' as the first statement", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            continue
        if key != "edge":
            raise ParseError(f"unknown statement {key!r}", lineno)
        if len(parts) < 3:
            raise ParseError("edge needs a weight and at least one vertex", lineno)
        try:
            w = float(parts[1])
        except ValueError:
            raise ParseError(f"bad weight {parts[1]!r}", lineno) from None
        if not (w > 0 and math.isfinite(w)):
            raise ParseError(f"weight must be positive, got {parts[1]}", lineno)
        try:
            vs = [int(p) for p in parts[2:]]
        except ValueError:
            raise ParseError("vertex ids must be integers", lineno) from None
        if len(set(vs)) != len(vs):
            raise ParseError("edge repeats a vertex", lineno)
        bad = [v for v in vs if not 1 <= v <= n]
        if bad:
            raise ParseError(f"vertex {bad[0]} outside 1..{n}", lineno)
        edges.append((tuple(vs), w))
    if n is None:
        raise ParseError("missing 'vertices N' statement")
    return WeightedHypergraph.from_edges(n, edges)


def load_hypergraph(path) -> WeightedHypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())
