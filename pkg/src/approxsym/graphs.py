"""Undirected simple graphs, vertex permutations and the mismatch energy.

The energy of a permutation pi on a graph with adjacency matrix A is

    eps(A, pi) = (1/4) * ||A - P A P^T||_1

with P the permutation matrix of pi.  For a simple undirected graph this
equals the number of edges whose image {pi(u), pi(v)} is not an edge, which
is how the fast path counts it.  eps == 0 exactly when pi is an automorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels


class Graph:
    """Simple undirected graph on vertices 0..n-1, no loops, no multiedges.

    Neighbor sets are the source of truth; CSR and bitset views for the
    compiled kernels are built lazily and invalidated on mutation.
    """

    def __init__(self, n: int, edges: Optional[Iterable[tuple[int, int]]] = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._m = 0
        self._csr: Optional[tuple[np.ndarray, np.ndarray]] = None
        self._bits: Optional[np.ndarray] = None
        self._edge_arrays: Optional[tuple[np.ndarray, np.ndarray]] = None
        if edges is not None:
            for u, v in edges:
                self.add_edge(u, v)

    @property
    def m(self) -> int:
        return self._m

    def add_edge(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        if u == v:
            raise ValueError(f"self-loop at {u} not allowed")
        if v not in self._adj[u]:
            self._adj[u].add(v)
            self._adj[v].add(u)
            self._m += 1
            self._csr = None
            self._bits = None
            self._edge_arrays = None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbors(self, u: int) -> frozenset[int]:
        return frozenset(self._adj[u])

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def degrees(self) -> np.ndarray:
        return np.array([len(s) for s in self._adj], dtype=np.int64)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        out = []
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) with each neighbor list sorted ascending."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for u in range(self.n):
                indptr[u + 1] = indptr[u] + len(self._adj[u])
            indices = np.empty(indptr[-1], dtype=np.int64)
            for u in range(self.n):
                nbrs = sorted(self._adj[u])
                indices[indptr[u] : indptr[u + 1]] = nbrs
            self._csr = (indptr, indices)
        return self._csr

    def bitset(self) -> np.ndarray:
        """Packed adjacency: row u, bit v set iff {u, v} is an edge."""
        if self._bits is None:
            words = (self.n + 63) // 64
            bits = np.zeros((max(self.n, 1), max(words, 1)), dtype=np.uint64)
            for u in range(self.n):
                for v in self._adj[u]:
                    bits[u, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
            self._bits = bits
        return self._bits

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._edge_arrays is None:
            es = self.edges()
            eu = np.array([e[0] for e in es], dtype=np.int64)
            ev = np.array([e[1] for e in es], dtype=np.int64)
            self._edge_arrays = (eu, ev)
        return self._edge_arrays

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u in range(self.n):
            for v in self._adj[u]:
                a[u, v] = 1
        return a

    def copy(self) -> "Graph":
        g = Graph(self.n)
        for u in range(self.n):
            g._adj[u] = set(self._adj[u])
        g._m = self._m
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


class Permutation:
    """Bijection on 0..n-1 with O(1) apply/invert and O(1) transposition
    of two images."""

    __slots__ = ("forward", "inverse")

    def __init__(self, forward: Sequence[int] | np.ndarray):
        fwd = np.asarray(forward, dtype=np.int64).copy()
        n = fwd.shape[0]
        seen = np.zeros(n, dtype=bool)
        for x in fwd:
            if not (0 <= x < n) or seen[x]:
                raise ValueError("not a permutation of 0..n-1")
            seen[x] = True
        inv = np.empty(n, dtype=np.int64)
        inv[fwd] = np.arange(n, dtype=np.int64)
        self.forward = fwd
        self.inverse = inv

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))

    @classmethod
    def _from_arrays(cls, forward: np.ndarray, inverse: np.ndarray) -> "Permutation":
        p = cls.__new__(cls)
        p.forward = forward
        p.inverse = inverse
        return p

    @property
    def n(self) -> int:
        return self.forward.shape[0]

    def __call__(self, v: int) -> int:
        return int(self.forward[v])

    def swap_images(self, a: int, b: int) -> None:
        """In place: exchange the images of a and b (compose with the
        transposition (a b) on the left of nothing -- pi' = pi o (a b))."""
        fa, fb = self.forward[a], self.forward[b]
        self.forward[a], self.forward[b] = fb, fa
        self.inverse[fa], self.inverse[fb] = b, a

    def fixed_points(self) -> int:
        return int(np.count_nonzero(self.forward == np.arange(self.n)))

    def is_identity(self) -> bool:
        return self.fixed_points() == self.n

    def is_derangement(self) -> bool:
        return self.fixed_points() == 0

    def copy(self) -> "Permutation":
        return Permutation._from_arrays(self.forward.copy(), self.inverse.copy())

    def matrix(self) -> np.ndarray:
        """P with P[pi(i), i] = 1, so that (P A P^T)[pi(i), pi(j)] = A[i, j]."""
        p = np.zeros((self.n, self.n), dtype=np.int8)
        p[self.forward, np.arange(self.n)] = 1
        return p

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return bool(np.array_equal(self.forward, other.forward))

    def __repr__(self) -> str:
        return f"Permutation({self.forward.tolist()})"


@dataclass(frozen=True)
class Energy:
    """Mismatch energy of a permutation together with its normalized form."""

    epsilon: int
    n: int
    m: int

    @property
    def normalized(self) -> float:
        return normalized_symmetry(self.epsilon, self.n)


def energy(graph: Graph, perm: Permutation) -> int:
    """eps(A, pi): number of edges whose image is a non-edge."""
    if perm.n != graph.n:
        raise ValueError("permutation size does not match graph")
    if graph.m == 0:
        return 0
    eu, ev = graph.edge_arrays()
    return int(_kernels.energy_kernel(eu, ev, graph.bitset(), perm.forward))


def energy_dense_oracle(graph: Graph, perm: Permutation) -> int:
    """Reference implementation straight from the matrix definition:
    (1/4) * ||A - P A P^T||_1.  Quadratic memory; guarded for sanity."""
    if graph.n > 2048:
        raise ValueError("dense oracle limited to n <= 2048")
    a = graph.adjacency_matrix().astype(np.int64)
    p = perm.matrix().astype(np.int64)
    papt = p @ a @ p.T
    total = int(np.abs(a - papt).sum())
    assert total % 4 == 0
    return total // 4


def energy_delta(graph: Graph, perm: Permutation, a: int, b: int) -> int:
    """Change in eps if the images of a and b were exchanged.

    Only edges incident to a or b can change image status, and the edge
    {a, b} itself (if present) maps to the same unordered pair, so the scan
    touches deg(a) + deg(b) edges.
    """
    if a == b:
        return 0
    indptr, indices = graph.csr()
    return int(
        _kernels.delta_kernel(indptr, indices, graph.bitset(), perm.forward, a, b)
    )


def normalized_symmetry(epsilon: int, n: int) -> float:
    """S = 4 * eps / (n * (n - 1)), the mismatch share of all vertex pairs
    counted in both directions; 0 for n < 2."""
    if n < 2:
        return 0.0
    return 4.0 * epsilon / (n * (n - 1))


def read_edge_list(path) -> Graph:
    """Parse the plain-text edge list format.

    Lines are ``u v`` pairs; ``#`` starts a comment; an optional ``n <count>``
    header fixes the vertex count (otherwise 1 + max endpoint is used, or 0
    for an empty file).
    """
    n_declared: Optional[int] = None
    pairs: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "n":
                if n_declared is not None:
                    raise ValueError(f"line {lineno}: duplicate n header")
                if len(parts) != 2:
                    raise ValueError(f"line {lineno}: malformed n header")
                n_declared = int(parts[1])
                continue
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v'")
            pairs.append((int(parts[0]), int(parts[1])))
    if n_declared is None:
        n_declared = 1 + max((max(u, v) for u, v in pairs), default=-1)
    g = Graph(n_declared)
    for u, v in pairs:
        g.add_edge(u, v)
    return g


def write_edge_list(path, graph: Graph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n {graph.n}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")
