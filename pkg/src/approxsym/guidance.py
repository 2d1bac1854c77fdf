"""Centrality-similarity matrices and the guided move distribution.

The similarity between vertices i, j is m_ij = (|G(i) - G(j)| + beta)^-1
where G is the centrality vector min-max rescaled to [0, 1].  A guided move
draws the first vertex a uniformly, then draws b with weight

    w_b = max(m_{a,pi(b)} + m_{b,pi(a)} - m_{a,pi(a)} - m_{b,pi(b)}, phi)

so swaps that would align each vertex with an image of similar centrality
are preferred, while phi keeps every transposition reachable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .centrality import KINDS, CentralityVector
from .graphs import Permutation
from .rng import SplitMix64

DEFAULT_BETA = 0.05
DEFAULT_PHI = 0.05


@dataclass(frozen=True)
class SimilarityMatrix:
    n: int
    m: np.ndarray
    beta: float


@dataclass(frozen=True)
class GuidanceParams:
    centrality_kind: str
    beta: float = DEFAULT_BETA
    phi: float = DEFAULT_PHI

    def __post_init__(self):
        if self.centrality_kind not in KINDS:
            raise ValueError(f"unknown centrality kind {self.centrality_kind!r}")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.phi <= 0:
            raise ValueError("phi must be positive")


def minmax_rescale(values: np.ndarray) -> np.ndarray:
    """Affinely map to [0, 1]; a constant vector maps to all zeros."""
    lo = values.min()
    hi = values.max()
    if hi - lo == 0:
        return np.zeros_like(values, dtype=np.float64)
    return (values - lo) / (hi - lo)


def build_similarity(c: CentralityVector, beta: float = DEFAULT_BETA) -> SimilarityMatrix:
    if beta <= 0:
        raise ValueError("beta must be positive")
    g = minmax_rescale(c.values)
    d = np.abs(g[:, None] - g[None, :])
    return SimilarityMatrix(n=g.shape[0], m=1.0 / (d + beta), beta=beta)


def uniform_move(p: Permutation, rng: SplitMix64) -> tuple[int, int]:
    """Uniform over unordered distinct pairs (returned in draw order)."""
    n = p.n
    if n < 2:
        raise ValueError("need at least two vertices")
    a = rng.randrange(n)
    b = rng.randrange(n - 1)
    if b >= a:
        b += 1
    return a, b


def guided_move(
    p: Permutation, sim: SimilarityMatrix, phi: float, rng: SplitMix64
) -> tuple[int, int]:
    """One draw from the Algorithm-1 distribution; O(n)."""
    n = p.n
    if n < 2:
        raise ValueError("need at least two vertices")
    if phi <= 0:
        raise ValueError("phi must be positive")
    a = rng.randrange(n)
    b = guided_partner(a, p, sim, phi, rng)
    return a, b


def guided_partner(
    a: int, p: Permutation, sim: SimilarityMatrix, phi: float, rng: SplitMix64
) -> int:
    """Categorical draw of b given a; exposed separately for testing the
    conditional distribution."""
    weights = guided_weights(a, p, sim, phi)
    total = weights.sum()
    u = rng.random() * total
    acc = 0.0
    for j in range(p.n):
        acc += weights[j]
        if u < acc:
            return j
    # roundoff fell off the end; last positive-weight slot
    return p.n - 1 if a != p.n - 1 else p.n - 2


def guided_weights(
    a: int, p: Permutation, sim: SimilarityMatrix, phi: float
) -> np.ndarray:
    """Unnormalized weights w_b for all b (w_a = 0)."""
    fwd = p.forward
    m = sim.m
    fa = fwd[a]
    idx = np.arange(p.n)
    dm = m[a, fwd] + m[idx, fa] - m[a, fa] - m[idx, fwd]
    w = np.maximum(dm, phi)
    w[a] = 0.0
    return w
