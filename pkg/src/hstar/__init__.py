"""Spectral matrices, hyperstars and spectrum-preserving reductions of weighted hypergraphs."""

from .core import Edge, WeightedHypergraph, load_hypergraph, parse_hypergraph
from .hyperstar import HyperstarWitness, detect_hyperstars, validate_witness
from .reduction import ReductionPlan, q_reduce, q_star_reduce
from .report import Check, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "Check",
    "Edge",
    "HyperstarWitness",
    "ReductionPlan",
    "VerificationReport",
    "WeightedHypergraph",
    "detect_hyperstars",
    "load_hypergraph",
    "parse_hypergraph",
    "q_reduce",
    "q_star_reduce",
    "validate_witness",
]
