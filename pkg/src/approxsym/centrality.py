"""Vertex centralities used as guidance heuristics: degree, eigenvector,
PageRank, clustering coefficient and betweenness."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graphs import Graph

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1000

KINDS = ("degree", "eigenvector", "pagerank", "clustering", "betweenness")


class ConvergenceError(RuntimeError):
    """Iterative centrality failed to converge within the iteration budget."""

    def __init__(self, kind: str, iterations: int, residual: float):
        self.kind = kind
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"{kind} centrality did not converge in {iterations} iterations "
            f"(residual {residual:.3e})"
        )


@dataclass(frozen=True)
class CentralityVector:
    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown centrality kind {self.kind!r}")
        v = np.asarray(self.values, dtype=np.float64)
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("centrality values must be finite and nonnegative")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def degree_centrality(g: Graph) -> CentralityVector:
    return CentralityVector("degree", g.degrees().astype(np.float64))


def eigenvector_centrality(
    g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> CentralityVector:
    """Dominant eigenvector of the adjacency matrix, unit L2 norm.

    Power iteration runs on A + I rather than A: the shift leaves the
    eigenvectors untouched but makes the top eigenvalue strictly dominant in
    magnitude, so the iteration also converges on bipartite graphs (where the
    spectrum of A is symmetric and plain iteration oscillates forever).
    """
    if g.m == 0:
        raise ValueError("eigenvector centrality needs at least one edge")
    n = g.n
    indptr, indices = g.csr()
    v = np.full(n, 1.0 / np.sqrt(n))
    nxt = np.empty(n)
    diff = np.inf
    for _ in range(max_iter):
        for i in range(n):
            nxt[i] = v[i] + v[indices[indptr[i] : indptr[i + 1]]].sum()
        nxt /= np.linalg.norm(nxt)
        diff = np.abs(nxt - v).max()
        v, nxt = nxt.copy(), v
        if diff < tol:
            v = np.abs(v)
            v /= np.linalg.norm(v)
            return CentralityVector("eigenvector", v)
    raise ConvergenceError("eigenvector", max_iter, float(diff))


def pagerank(
    g: Graph,
    alpha: float = 0.85,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> CentralityVector:
    """Stationary PageRank with uniform teleport; dangling vertices spread
    their mass uniformly.  Values sum to 1."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    n = g.n
    if n == 0:
        return CentralityVector("pagerank", np.empty(0))
    deg = g.degrees().astype(np.float64)
    dangling = deg == 0
    indptr, indices = g.csr()
    r = np.full(n, 1.0 / n)
    teleport = (1.0 - alpha) / n
    diff = np.inf
    for _ in range(max_iter):
        share = np.where(dangling, 0.0, r / np.maximum(deg, 1.0))
        dangling_mass = r[dangling].sum() / n
        nxt = np.empty(n)
        for i in range(n):
            nxt[i] = share[indices[indptr[i] : indptr[i + 1]]].sum()
        nxt = teleport + alpha * (nxt + dangling_mass)
        diff = np.abs(nxt - r).sum()
        r = nxt
        if diff < tol:
            return CentralityVector("pagerank", r / r.sum())
    raise ConvergenceError("pagerank", max_iter, float(diff))


def clustering_coefficient(g: Graph) -> CentralityVector:
    """c_i = 2 * (edges among neighbors of i) / (k_i (k_i - 1)); 0 when
    k_i < 2."""
    n = g.n
    vals = np.zeros(n)
    for i in range(n):
        nbrs = g.neighbors(i)
        k = len(nbrs)
        if k < 2:
            continue
        links = 0
        for u in nbrs:
            # count each neighbor pair once
            links += sum(1 for w in g.neighbors(u) if w in nbrs and w > u)
        vals[i] = 2.0 * links / (k * (k - 1))
    return CentralityVector("clustering", vals)


def betweenness_centrality(g: Graph) -> CentralityVector:
    """Exact unweighted betweenness (one BFS per source), endpoints excluded,
    unordered pairs."""
    if g.n == 0:
        return CentralityVector("betweenness", np.empty(0))
    indptr, indices = g.csr()
    return CentralityVector("betweenness", _kernels.betweenness_kernel(indptr, indices, g.n))


def compute(kind: str, g: Graph) -> CentralityVector:
    """Evaluate a centrality by name with the module defaults."""
    try:
        fn = _BY_NAME[kind]
    except KeyError:
        raise ValueError(f"unknown centrality kind {kind!r}") from None
    return fn(g)


_BY_NAME = {
    "degree": degree_centrality,
    "eigenvector": eigenvector_centrality,
    "pagerank": pagerank,
    "clustering": clustering_coefficient,
    "betweenness": betweenness_centrality,
}
