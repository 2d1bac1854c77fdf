"""Compiled kernels for the hot loops: mismatch counting, annealing sweeps,
exhaustive permutation search and betweenness accumulation.

Graphs enter as CSR neighbor lists (``indptr``/``indices``) plus a packed
bitset adjacency (one row of ``(n+63)//64`` uint64 words per vertex) that
gives O(1) edge-membership tests.  The in-kernel RNG is SplitMix64, matching
``approxsym.rng.SplitMix64`` stream-for-stream.
"""
from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
_INV_2_53 = 1.1102230246251565e-16  # 2**-53


@njit(cache=True, nogil=True, inline="always")
def _next_u64(state):
    state[0] += U64(0x9E3779B97F4A7C15)
    z = state[0]
    z = (z ^ (z >> U64(30))) * U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> U64(27))) * U64(0x94D049BB133111EB)
    return z ^ (z >> U64(31))


@njit(cache=True, nogil=True, inline="always")
def _next_unit(state):
    return (_next_u64(state) >> U64(11)) * _INV_2_53


@njit(cache=True, nogil=True, inline="always")
def _has_edge(bits, u, v):
    return (bits[u, v >> 6] >> U64(v & 63)) & U64(1)


@njit(cache=True, nogil=True)
def energy_kernel(edges_u, edges_v, bits, forward):
    """Count edges whose image under the permutation is a non-edge."""
    eps = 0
    for e in range(edges_u.shape[0]):
        fu = forward[edges_u[e]]
        fv = forward[edges_v[e]]
        if _has_edge(bits, fu, fv) == U64(0):
            eps += 1
    return eps


@njit(cache=True, nogil=True, inline="always")
def _delta_kernel(indptr, indices, bits, forward, a, b):
    # Only edges incident to a or b change image; the edge {a,b} maps to the
    # same unordered pair before and after the swap, so it is skipped.
    fa = forward[a]
    fb = forward[b]
    delta = 0
    for idx in range(indptr[a], indptr[a + 1]):
        x = indices[idx]
        if x == b:
            continue
        fx = forward[x]
        delta += np.int64(_has_edge(bits, fa, fx)) - np.int64(_has_edge(bits, fb, fx))
    for idx in range(indptr[b], indptr[b + 1]):
        x = indices[idx]
        if x == a:
            continue
        fx = forward[x]
        delta += np.int64(_has_edge(bits, fb, fx)) - np.int64(_has_edge(bits, fa, fx))
    return delta


@njit(cache=True, nogil=True)
def delta_kernel(indptr, indices, bits, forward, a, b):
    return _delta_kernel(indptr, indices, bits, forward, a, b)


@njit(cache=True, nogil=True, inline="always")
def _sample_uniform_pair(state, n):
    a = np.int64(_next_u64(state) % U64(n))
    b = np.int64(_next_u64(state) % U64(n - 1))
    if b >= a:
        b += 1
    return a, b


@njit(cache=True, nogil=True, inline="always")
def _sample_guided_pair(state, n, forward, sim, phi, weights):
    # Algorithm: draw a uniformly, weight every b != a by
    # max(sim[a,pi(b)] + sim[b,pi(a)] - sim[a,pi(a)] - sim[b,pi(b)], phi),
    # then draw b from the normalized weights.
    a = np.int64(_next_u64(state) % U64(n))
    fa = forward[a]
    own = sim[a, fa]
    total = 0.0
    for b in range(n):
        dm = sim[a, forward[b]] + sim[b, fa] - own - sim[b, forward[b]]
        if dm < phi:
            dm = phi
        weights[b] = dm
        total += dm
    total -= weights[a]
    weights[a] = 0.0
    u = _next_unit(state) * total
    b = np.int64(n - 1)
    if b == a:
        b -= 1
    acc = 0.0
    for j in range(n):
        acc += weights[j]
        if u < acc:
            b = np.int64(j)
            break
    if b == a:  # unreachable unless fp roundoff lands on the zeroed slot
        b = np.int64((a + 1) % n)
    return a, b


@njit(cache=True, nogil=True)
def uniform_pair_kernel(state, n):
    return _sample_uniform_pair(state, n)


@njit(cache=True, nogil=True)
def guided_pair_kernel(state, n, forward, sim, phi):
    weights = np.empty(n, dtype=np.float64)
    return _sample_guided_pair(state, n, forward, sim, phi, weights)


@njit(cache=True, nogil=True)
def anneal_kernel(
    indptr,
    indices,
    bits,
    n,
    steps,
    t_max,
    t_min,
    forward,
    inverse,
    eps0,
    fixed0,
    guided,
    sim,
    phi,
    forbid_identity,
    derangement_only,
    seed,
    best_forward,
    trace,
    trace_every,
):
    """One annealing schedule pass; mutates forward/inverse to the end state.

    Returns (best_eps, end_eps, accepted, proposed).  best_forward receives
    the best state ever visited (the initial state counts).
    """
    state = np.empty(1, dtype=np.uint64)
    state[0] = U64(seed)
    weights = np.empty(n, dtype=np.float64)

    eps = eps0
    fixed = fixed0
    best_eps = eps
    best_forward[:] = forward
    accepted = 0

    temp = t_max
    decay = np.exp(np.log(t_min / t_max) / steps)
    traced = 0

    for k in range(steps):
        temp *= decay
        if guided:
            a, b = _sample_guided_pair(state, n, forward, sim, phi, weights)
        else:
            a, b = _sample_uniform_pair(state, n)

        delta = _delta_kernel(indptr, indices, bits, forward, a, b)

        accept = delta <= 0
        if not accept:
            accept = _next_unit(state) < np.exp(-delta / temp)

        if accept:
            fa = forward[a]
            fb = forward[b]
            new_fixed = (
                fixed
                - np.int64(fa == a)
                - np.int64(fb == b)
                + np.int64(fb == a)
                + np.int64(fa == b)
            )
            if forbid_identity and new_fixed == n:
                accept = False
            if derangement_only and (fb == a or fa == b):
                accept = False
            if accept:
                forward[a] = fb
                forward[b] = fa
                inverse[fb] = a
                inverse[fa] = b
                fixed = new_fixed
                eps += delta
                accepted += 1
                if eps < best_eps:
                    best_eps = eps
                    best_forward[:] = forward

        if trace_every > 0 and (k + 1) % trace_every == 0 and traced < trace.shape[0]:
            trace[traced] = eps
            traced += 1

    return best_eps, eps, accepted, steps


@njit(cache=True, nogil=True)
def exact_search_kernel(n, edges_u, edges_v, bits, derangements_only):
    """Exhaustive lexicographic scan over the mode's permutation class.

    Returns (best_eps, witness, searched); the witness is the
    lexicographically smallest permutation attaining the minimum.
    """
    perm = np.arange(n)
    witness = np.empty(n, dtype=np.int64)
    best = np.int64(edges_u.shape[0] + 1)
    searched = 0

    while True:
        in_class = True
        if derangements_only:
            for i in range(n):
                if perm[i] == i:
                    in_class = False
                    break
        else:
            identity = True
            for i in range(n):
                if perm[i] != i:
                    identity = False
                    break
            in_class = not identity

        if in_class:
            searched += 1
            eps = 0
            for e in range(edges_u.shape[0]):
                fu = perm[edges_u[e]]
                fv = perm[edges_v[e]]
                if _has_edge(bits, fu, fv) == U64(0):
                    eps += 1
            if eps < best:
                best = eps
                witness[:] = perm

        # next_permutation in lexicographic order
        i = n - 2
        while i >= 0 and perm[i] >= perm[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while perm[j] <= perm[i]:
            j -= 1
        perm[i], perm[j] = perm[j], perm[i]
        lo = i + 1
        hi = n - 1
        while lo < hi:
            perm[lo], perm[hi] = perm[hi], perm[lo]
            lo += 1
            hi -= 1

    return best, witness, searched


@njit(cache=True, nogil=True)
def betweenness_kernel(indptr, indices, n):
    """Brandes accumulation over one BFS per source; unordered-pair counts."""
    bc = np.zeros(n, dtype=np.float64)
    order = np.empty(n, dtype=np.int64)
    dist = np.empty(n, dtype=np.int64)
    sigma = np.empty(n, dtype=np.float64)
    delta = np.empty(n, dtype=np.float64)

    for s in range(n):
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v]
            for idx in range(indptr[v], indptr[v + 1]):
                w = indices[idx]
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order[tail] = w
                    tail += 1
                if dist[w] == dv + 1:
                    sigma[w] += sigma[v]
        for pos in range(tail - 1, 0, -1):
            w = order[pos]
            coeff = (1.0 + delta[w]) / sigma[w]
            dw = dist[w]
            for idx in range(indptr[w], indptr[w + 1]):
                v = indices[idx]
                if dist[v] == dw - 1:
                    delta[v] += sigma[v] * coeff
        for v in range(n):
            if v != s:
                bc[v] += delta[v]

    return bc / 2.0
