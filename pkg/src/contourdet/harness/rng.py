"""xoshiro256** seeded through SplitMix64.

Both are fully specified 64-bit shift/rotate generators, so any
implementation reproduces the same stream from the same integer seed:

* the seed is reduced mod 2**64 and fed to SplitMix64; its first four outputs
  form the xoshiro256** state;
* ``uniform()`` is ``(next_u64() >> 11) * 2**-53``;
* ``below(k)`` is ``floor(uniform() * k)``;
* ``disk(r)`` draws ``U1, U2`` in that order and returns
  ``r * sqrt(U1) * exp(2 pi i U2)``.
"""

from __future__ import annotations

import math

__all__ = ["Xoshiro256", "splitmix64"]

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256:
    def __init__(self, seed: int):
        sm = seed & _MASK
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self.s = s

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, k: int) -> int:
        return int(self.uniform() * k)

    def disk(self, r: float) -> complex:
        rad = r * math.sqrt(self.uniform())
        ang = 2 * math.pi * self.uniform()
        return complex(rad * math.cos(ang), rad * math.sin(ang))
