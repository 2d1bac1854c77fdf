"""Seeded constructors for the four benchmark families: grid (path product),
Erdos-Renyi, Barabasi-Albert and duplication-divergence."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .graphs import Graph
from .rng import SplitMix64

FAMILIES = ("grid", "er", "ba", "dd")
_GRID_VERTEX_CAP = 10**6
_DD_RETRY_CAP = 10**6


@dataclass(frozen=True)
class ModelSpec:
    family: str
    params: dict[str, Any]
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def label(self) -> str:
        parts = ",".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.family}({parts})"

    def build(self) -> Graph:
        rng = SplitMix64(self.seed)
        if self.family == "grid":
            return grid_graph(self.params["lengths"])
        if self.family == "er":
            return erdos_renyi(self.params["n"], self.params["p"], rng)
        if self.family == "ba":
            return barabasi_albert(
                self.params["n"],
                self.params["k"],
                self.params.get("m0", self.params["k"]),
                rng,
            )
        return duplication_divergence(self.params["n"], self.params["sigma"], rng)


def grid_graph(lengths) -> Graph:
    """Cartesian product of paths P_{n_1} x ... x P_{n_d}: vertices are
    mixed-radix tuples, edges join tuples differing by 1 in one coordinate."""
    lengths = list(lengths)
    if not lengths or any(l < 1 for l in lengths):
        raise ValueError("all side lengths must be >= 1")
    n = math.prod(lengths)
    if n > _GRID_VERTEX_CAP:
        raise ValueError(f"grid too large ({n} vertices)")
    # mixed-radix encoding: index = sum_i digit_i * stride_i
    strides = [1] * len(lengths)
    for i in range(len(lengths) - 2, -1, -1):
        strides[i] = strides[i + 1] * lengths[i + 1]
    g = Graph(n)
    for v in range(n):
        rem = v
        for length, stride in zip(lengths, strides):
            digit = rem // stride
            rem %= stride
            if digit + 1 < length:
                g.add_edge(v, v + stride)
    return g


def erdos_renyi(n: int, p: float, rng: SplitMix64) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    g = Graph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v)
    return g


def barabasi_albert(n: int, k: int, m0: int, rng: SplitMix64) -> Graph:
    """Preferential attachment: path seed P_{m0}, each arrival attaches to k
    distinct targets drawn degree-proportionally (rejection on duplicates)."""
    if not 1 <= k <= m0 < n:
        raise ValueError("need 1 <= k <= m0 < n")
    g = Graph(n)
    # repeated-node list: vertex v appears deg(v) times, so a uniform draw
    # from it is a degree-proportional draw
    repeated: list[int] = []
    for v in range(m0 - 1):
        g.add_edge(v, v + 1)
        repeated += [v, v + 1]
    for v in range(m0, n):
        targets: set[int] = set()
        while len(targets) < k:
            if repeated:
                cand = repeated[rng.randrange(len(repeated))]
            else:
                # all-isolated seed (m0 == 1): fall back to uniform
                cand = rng.randrange(v)
            targets.add(cand)
        for t in sorted(targets):
            g.add_edge(v, t)
            repeated += [v, t]
    return g


def duplication_divergence(n: int, sigma: float, rng: SplitMix64) -> Graph:
    """Start from K_2; duplicate a uniform random vertex, keeping each
    inherited edge with probability sigma; a duplicate retaining no edge is
    discarded and the duplication retried."""
    if not 0 < sigma <= 1:
        raise ValueError("sigma must lie in (0, 1]")
    if n < 2:
        raise ValueError("need n >= 2")
    adj: list[set[int]] = [{1}, {0}]
    retries = 0
    while len(adj) < n:
        u = rng.randrange(len(adj))
        kept = [v for v in sorted(adj[u]) if rng.random() < sigma]
        if not kept:
            retries += 1
            if retries > _DD_RETRY_CAP:
                raise RuntimeError("duplication retry cap exceeded")
            continue
        w = len(adj)
        adj.append(set(kept))
        for v in kept:
            adj[v].add(w)
    g = Graph(n)
    for u in range(n):
        for v in adj[u]:
            if u < v:
                g.add_edge(u, v)
    return g
