"""Seeded random fixtures.

All randomness goes through :class:`Lcg64` so that a seed reproduces the
same fixtures in any language:

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64

The initial state is the seed itself.  ``below(k)`` advances once and returns
``((state >> 32) * k) >> 32``; every other draw is built from ``below``.
"""

from __future__ import annotations

from fractions import Fraction

from .circle import INF, Configuration
from .cocycles import AltCochain2, CrossRatioTable, coboundary1
from .measures import crossratio_from_measure, measure_from_atoms
from .mobius import MobiusMap

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK
        return self.state

    def below(self, k: int) -> int:
        """Uniform-ish integer in ``[0, k)`` for ``0 < k <= 2**32``."""
        return ((self.next_u64() >> 32) * k) >> 32

    def integer(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def rational(self, num: int = 20, den: int = 6) -> Fraction:
        return Fraction(self.integer(-num, num), self.integer(1, den))


def random_config(rng: Lcg64, n: int, with_infinity: bool = True) -> Configuration:
    """``n`` distinct points; infinity is drawn with probability 1/8 per slot."""
    pts: list = []
    while len(pts) < n:
        x = INF if with_infinity and rng.below(8) == 0 else rng.rational()
        if x not in pts:
            pts.append(x)
    return Configuration(pts)


def random_mobius(rng: Lcg64, bound: int = 6) -> MobiusMap:
    while True:
        p, q, r, s = (rng.integer(-bound, bound) for _ in range(4))
        if p * s - q * r > 0:
            return MobiusMap(p, q, r, s)


def random_weights(rng: Lcg64, n: int, bound: int = 3) -> list:
    return [Fraction(rng.integer(-bound, bound), rng.integer(1, 3)) for _ in range(n)]


def random_measure(rng: Lcg64, config: Configuration):
    n = len(config)
    return measure_from_atoms(config, random_weights(rng, n), random_weights(rng, n))


def random_crossratio(rng: Lcg64, config: Configuration) -> CrossRatioTable:
    """Atom-built measure pulled back to a cross ratio, plus a multiple of the canonical one."""
    m = random_measure(rng, config)
    t = crossratio_from_measure(m, config.cyclic_labels[:4], check=False)
    return t + rng.rational(5, 4) * CrossRatioTable.canonical(config)


def random_cocycle(rng: Lcg64, n: int) -> AltCochain2:
    """Coboundary of a random antisymmetric 1-cochain (every alternating cocycle is one)."""
    b = {}
    for x in range(n):
        b[(x, x)] = Fraction(0)
        for y in range(x + 1, n):
            v = rng.rational(6, 4)
            b[(x, y)], b[(y, x)] = v, -v
    db = coboundary1(lambda x, y: b[(x, y)])
    return AltCochain2.from_function(n, db)
