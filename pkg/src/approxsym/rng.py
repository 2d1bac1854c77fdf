"""Seedable deterministic randomness shared by every stochastic component.

All randomness in this package flows through SplitMix64 streams (the same
generator the annealing kernels implement in compiled code), so any run is
reproducible bit-for-bit from its 64-bit seed, independent of platform,
process count, or library versions.  Stream seeds for sub-tasks are derived
by hashing structured keys with BLAKE2b, which keeps independently-labelled
streams collision-free.
"""
from __future__ import annotations

import hashlib

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood 2014)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def randrange(self, n: int) -> int:
        # Modulo bias is < n / 2**64: irrelevant at graph scales.
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n

    def shuffle(self, xs) -> None:
        """In-place Fisher-Yates shuffle of a mutable sequence."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.randrange(i + 1)
            xs[i], xs[j] = xs[j], xs[i]


def derive_seed(*parts) -> int:
    """Collision-resistant 64-bit seed from a tuple of labelling parts.

    Parts are stringified, so labels, indices and seeds can be mixed freely;
    the same parts always give the same seed on every platform.
    """
    h = hashlib.blake2b(digest_size=8)
    for part in parts:
        h.update(str(part).encode())
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")
