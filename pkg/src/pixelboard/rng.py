"""Deterministic random number generator.

The whole system draws from one xorshift64* stream so that a (seed, input
log) pair replays to the identical frame sequence on any platform. The
algorithm is pinned here; nothing else in the package may use another
randomness source.
"""
from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULTIPLIER = 0x2545F4914F6CDD1D
# xorshift state must be nonzero; seed 0 (the CLI default) maps to this
# fixed odd constant instead.
_ZERO_SEED_STATE = 0x9E3779B97F4A7C15


class Rng:
    """xorshift64* with 64-bit state. Same seed, same sequence, everywhere."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = (seed & _MASK64) or _ZERO_SEED_STATE

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * _MULTIPLIER) & _MASK64

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound). Modulo reduction; the tiny bias
        is irrelevant here and keeps the draw a single documented call."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound

    def next_float(self) -> float:
        """Float in [0, 1); exact division so the value is reproducible."""
        return self.next_u64() / 2**64

    def chance(self, p: float) -> bool:
        return self.next_float() < p

    def fork(self) -> "Rng":
        """Independent generator seeded from this one (one draw consumed)."""
        return Rng(self.next_u64())
