"""Exact approximate-symmetry E(A) by exhaustive permutation search.

Ground truth for annealing quality on small graphs: every permutation in the
mode's class (all non-identity permutations, or derangements only) is
enumerated in lexicographic order and scored with the edge-based energy.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import Graph, Permutation

MAX_N = 10

MODES = ("non-identity", "derangements-only")


@dataclass(frozen=True)
class ExactResult:
    exact_epsilon: int
    witness: Permutation
    searched: int
    mode: str


def exact_symmetry(g: Graph, mode: str = "non-identity") -> ExactResult:
    """Minimum energy over the mode's permutation class, with the
    lexicographically smallest witness.  Guarded to n <= 10."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if g.n > MAX_N:
        raise ValueError(f"exact search limited to n <= {MAX_N} (got {g.n})")
    if g.n < 2:
        raise ValueError("need at least two vertices for a non-identity witness")
    eu, ev = g.edge_arrays()
    best, witness, searched = _kernels.exact_search_kernel(
        g.n, eu, ev, g.bitset(), mode == "derangements-only"
    )
    return ExactResult(
        exact_epsilon=int(best),
        witness=Permutation(witness),
        searched=int(searched),
        mode=mode,
    )
