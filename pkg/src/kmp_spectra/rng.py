"""SplitMix64: the fixed, seedable generator used for every random instance.

The algorithm (Steele, Lea & Flood 2014) is small enough to restate exactly,
so other implementations can reproduce a sweep bit for bit::

    state += 0x9E3779B97F4A7C15            (mod 2**64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB (mod 2**64)
    return z ^ (z >> 31)

Derived quantities:

* ``uniform()``   = (next() >> 11) / 2**53, in [0, 1)
* ``randbelow(m)``= next() % m  (modulo bias is irrelevant at these sizes)
* ``exponential()`` = -log(1 - uniform())
* per-trial streams: ``SplitMix64(seed).fork(i)`` seeds a new generator with
  the i-th output of ``SplitMix64(seed ^ 0xD1B54A32D192ED03)``, so trial i
  does not depend on how many draws trial i-1 made.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_FORK_SALT = 0xD1B54A32D192ED03


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next() >> 11) / float(1 << 53)

    def randbelow(self, m: int) -> int:
        if m <= 0:
            raise ValueError("m must be positive")
        return self.next() % m

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        return lo + self.randbelow(hi - lo + 1)

    def exponential(self) -> float:
        return -math.log(1.0 - self.uniform())

    def fork(self, index: int) -> "SplitMix64":
        parent = SplitMix64(self.state ^ _FORK_SALT)
        for _ in range(index):
            parent.next()
        return SplitMix64(parent.next())
