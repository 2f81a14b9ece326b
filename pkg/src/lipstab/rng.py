"""64-bit linear congruential generator (Knuth's MMIX constants).

Used instead of :mod:`random` so that sample streams are fixed by a
published recurrence and reproducible everywhere.
"""
from __future__ import annotations

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    @classmethod
    def for_index(cls, seed: int, index: int) -> "Lcg64":
        """Independent-looking stream for sample ``index`` under ``seed``."""
        g = cls((seed ^ ((index + 1) * _GOLDEN)) & MASK)
        g.next()
        g.next()
        return g

    def next(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK
        return self.state

    def randbelow(self, k: int) -> int:
        # high bits of an LCG are the well-mixed ones
        return (self.next() >> 11) % k

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.randbelow(hi - lo + 1)
