"""Deterministic 64-bit pseudo-random generator (splitmix64).

Every random draw in this package (synthetic trace generation, RAND
replacement) goes through this generator so that results are bit-identical
across runs, platforms, and Python versions.  The stdlib Mersenne Twister
deliberately is not used: its integer helpers carry no cross-version
stability guarantee.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 stream: 64-bit state advanced by the golden-ratio increment."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), rejection-sampled to avoid modulo bias."""
        if n <= 0:
            raise ValueError(f"randbelow() requires n >= 1, got {n}")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n


def derive_seed(seed: int, salt: int) -> int:
    """Deterministic sub-seed for stream `salt` of master seed `seed`.

    Used to give every (seed, capacity) pair of a RAND sweep and every
    sub-stream of an interleaved generator its own independent stream.
    """
    return SplitMix64((seed ^ (salt * _GOLDEN)) & _MASK64).next_u64()
