"""Deterministic 64-bit PRNG for reproducible random inputs.

splitmix64: stateless-style stepping with the canonical constants.  It
is not cryptographic and is not meant to be; it exists so that every
"random" function in reports and tests is reproducible from a single
integer seed across platforms and Python versions.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound); modulo bias is irrelevant
        at the tiny bounds used here and determinism is what matters."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound
