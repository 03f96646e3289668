"""Shared fixtures: the two figure hypergraphs and the seeded random suites."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np

from hstar import core, hyperstar

DATA = Path(__file__).parent / "data"
FIG1 = DATA / "fig1.hg"
FIG2 = DATA / "fig2.hg"
FIG3_LEFT = DATA / "fig3_left.hg"

# incidence matrices as printed next to the two figures
FIG1_INCIDENCE = np.array([
    [1, 2, 0, 0, 0, 0],
    [0, 0, 1, 2, 0, 0],
    [1, 0, 1, 0, 1, 0],
    [1, 2, 1, 2, 0, 3],
    [0, 2, 0, 2, 0, 3],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 1, 3],
], dtype=float)

FIG2_INCIDENCE = np.array([
    [1, 2, 2, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 1, 2, 2, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 0],
    [1, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 2, 0, 0, 0, 2, 0, 1, 1, 3],
    [0, 0, 2, 0, 0, 0, 2, 1, 1, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 3],
], dtype=float)

N_SEEDS = 100
GHS_BASE, UHS_BASE, RANDOM_BASE = 1000, 2000, 3000


def fig1():
    return core.load_hypergraph(FIG1)


def fig2():
    return core.load_hypergraph(FIG2)


@lru_cache(maxsize=None)
def ghs_suite():
    """(seed, host, witness) for 100 planted stars with m in 2..5, k in 1..5.

    Star-edge and extra-edge weights are drawn from [0.1, 10]. A few extra
    vertices hang off the core so the Fiedler value is rarely repeated.
    """
    out = []
    for seed in range(N_SEEDS):
        rng = np.random.default_rng(GHS_BASE + seed)
        m, k = int(rng.integers(2, 6)), int(rng.integers(1, 6))
        h, wit = hyperstar.synthesize_ghs(
            m, k, None, seed,
            extra_vertices=int(rng.integers(1, 4)), extra_edges=int(rng.integers(0, 4)),
        )
        out.append((seed, h, wit))
    return tuple(out)


@lru_cache(maxsize=None)
def uhs_suite(p: int = 3):
    out = []
    for seed in range(N_SEEDS):
        rng = np.random.default_rng(UHS_BASE + seed)
        m, k = int(rng.integers(2, 6)), int(rng.integers(p - 1, 6))
        h, wit = hyperstar.synthesize_uhs(
            m, k, p, seed,
            extra_vertices=int(rng.integers(1, 4)), extra_edges=int(rng.integers(0, 4)),
        )
        out.append((seed, h, wit))
    return tuple(out)


def random_hypergraph(rng: np.random.Generator, n: int, n_edges: int, max_size: int = 4,
                      weight_range=(0.1, 10.0)) -> core.WeightedHypergraph:
    edges = []
    for _ in range(n_edges):
        size = int(rng.integers(1, min(max_size, n) + 1))
        vs = tuple(int(v) + 1 for v in rng.choice(n, size=size, replace=False))
        edges.append((vs, float(rng.uniform(*weight_range))))
    return core.WeightedHypergraph.from_edges(n, edges)


@lru_cache(maxsize=None)
def random_positive_suite():
    """100 random hypergraphs in which every vertex has a neighbour."""
    out = []
    seed = 0
    while len(out) < N_SEEDS:
        rng = np.random.default_rng(RANDOM_BASE + seed)
        n = int(rng.integers(2, 10))
        h = random_hypergraph(rng, n, int(rng.integers(n, 3 * n)))
        if np.all(core.degrees(h).adjacency > 0):
            out.append((seed, h))
        seed += 1
    return tuple(out)
