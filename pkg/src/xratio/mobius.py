"""Exact action of PSL(2, Q) on the projective line, and orbit cocycles.

Group elements are :class:`MobiusMap` instances.  Words in a rank-two free
group are plain strings over ``"gGhH"`` (capitals are inverses) and are
evaluated through :class:`WordEvaluator`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

import numpy as np

from .circle import (
    INF,
    BoundaryPoint,
    Configuration,
    cyclic_ordered,
    format_point,
    label_linking,
    point,
)
from .cocycles import CrossRatioTable, Violation


class OrientationError(ValueError):
    """Matrix with nonpositive determinant."""


class IdentityMapError(ValueError):
    pass


class OrbitEscapeError(ValueError):
    pass


class CollisionError(ValueError):
    pass


def _lcm(a, b):
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class MobiusMap:
    """x -> (p x + q) / (r x + s), stored as a canonical integer matrix.

    The stored entries are coprime integers whose first nonzero entry is
    positive, so two maps are equal iff they act identically.
    """

    p: int
    q: int
    r: int
    s: int

    def __init__(self, p, q, r, s):
        ents = [Fraction(v) for v in (p, q, r, s)]
        den = 1
        for v in ents:
            den = _lcm(den, v.denominator)
        ints = [int(v * den) for v in ents]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g == 0:
            raise OrientationError("zero matrix")
        lead = next(v for v in ints if v)
        if lead < 0:
            g = -g
        ints = [v // g for v in ints]
        if ints[0] * ints[3] - ints[1] * ints[2] <= 0:
            raise OrientationError(f"determinant of {ints} is not positive")
        for name, v in zip("pqrs", ints):
            object.__setattr__(self, name, v)

    @classmethod
    def parse(cls, text: str) -> "MobiusMap":
        """Parse ``"p q / r s"``."""
        top, _, bottom = text.partition("/")
        ents = top.split() + bottom.split()
        if len(ents) != 4:
            raise ValueError(f"expected 'p q / r s', got {text!r}")
        return cls(*(Fraction(e) for e in ents))

    def __str__(self):
        return f"{self.p} {self.q} / {self.r} {self.s}"

    @property
    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    @property
    def trace(self) -> int:
        return self.p + self.s

    def __call__(self, x):
        return apply(self, x)

    def __matmul__(self, other):
        return compose(self, other)


IDENTITY = MobiusMap(1, 0, 0, 1)


def apply(m: MobiusMap, x: BoundaryPoint) -> BoundaryPoint:
    x = point(x)
    if x is INF:
        return INF if m.r == 0 else Fraction(m.p, m.r)
    den = m.r * x + m.s
    if den == 0:
        return INF
    return (m.p * x + m.q) / den


def compose(m: MobiusMap, n: MobiusMap) -> MobiusMap:
    """The map x -> m(n(x))."""
    return MobiusMap(
        m.p * n.p + m.q * n.r,
        m.p * n.q + m.q * n.s,
        m.r * n.p + m.s * n.r,
        m.r * n.q + m.s * n.s,
    )


def inverse(m: MobiusMap) -> MobiusMap:
    return MobiusMap(m.s, -m.q, -m.r, m.p)


def classify(m: MobiusMap) -> str:
    if m == IDENTITY:
        return "identity"
    disc = m.trace**2 - 4 * m.det
    if disc < 0:
        return "elliptic"
    if disc == 0:
        return "parabolic"
    return "hyperbolic"


@dataclass(frozen=True)
class FixedPoints:
    """Fixed points of a non-identity map.

    ``exact`` is False when the fixed points are irrational; ``intervals`` then
    holds a rational isolating interval ``(lo, hi)`` for each, keyed like
    ``attracting``/``repelling``.
    """

    kind: str
    points: tuple = ()
    attracting: Optional[BoundaryPoint] = None
    repelling: Optional[BoundaryPoint] = None
    multipliers: dict = field(default_factory=dict)
    exact: bool = True
    intervals: dict = field(default_factory=dict)


def multiplier(m: MobiusMap, x: BoundaryPoint) -> Fraction:
    """Derivative of ``m`` at a fixed point ``x`` (in the chart 1/x at inf)."""
    if x is INF:
        return Fraction(m.s, m.p)
    return Fraction(m.det) / (m.r * x + m.s) ** 2


def _sqrt_bounds(n: int, bits: int) -> tuple[Fraction, Fraction]:
    # lo < sqrt(n) < hi with hi - lo = 2**-bits, n not a perfect square
    scale = 1 << bits
    k = math.isqrt(n * scale * scale)
    return Fraction(k, scale), Fraction(k + 1, scale)


def fixed_points(m: MobiusMap, bits: int = 40) -> FixedPoints:
    kind = classify(m)
    if kind == "identity":
        raise IdentityMapError("every point is fixed by the identity")
    if kind == "elliptic":
        return FixedPoints(kind)
    p, q, r, s = m.p, m.q, m.r, m.s
    if kind == "parabolic":
        x = INF if r == 0 else Fraction(p - s, 2 * r)
        return FixedPoints(kind, (x,), multipliers={x: Fraction(1)})
    disc = (p - s) ** 2 + 4 * q * r
    if r == 0:
        pts = [INF, Fraction(q, s - p)]
    else:
        root = math.isqrt(disc)
        if root * root != disc:
            sign = 1 if m.trace > 0 else -1
            lo, hi = _sqrt_bounds(disc, bits)

            def through(e, a, b):
                ends = sorted(Fraction(p - s + e * v, 2 * r) for v in (a, b))
                return tuple(ends)

            return FixedPoints(
                kind,
                exact=False,
                intervals={"attracting": through(sign, lo, hi), "repelling": through(-sign, lo, hi)},
            )
        pts = [Fraction(p - s + root, 2 * r), Fraction(p - s - root, 2 * r)]
    mult = {x: multiplier(m, x) for x in pts}
    att = next(x for x in pts if abs(mult[x]) < 1)
    rep = next(x for x in pts if abs(mult[x]) > 1)
    return FixedPoints(kind, (att, rep), att, rep, mult)


def chordal_sq(x: BoundaryPoint, y: BoundaryPoint) -> Fraction:
    """Squared chordal distance on RP^1, exact."""
    x, y = point(x), point(y)
    if x is INF and y is INF:
        return Fraction(0)
    if x is INF:
        x, y = y, x
    if y is INF:
        return 1 / (1 + x * x)
    return (x - y) ** 2 / ((1 + x * x) * (1 + y * y))


@dataclass
class NorthSouthReport:
    ok: bool
    failures: list = field(default_factory=list)


def north_south_check(
    m: MobiusMap, starts, iterations: int = 60, tol: Fraction = Fraction(1, 10**12)
) -> NorthSouthReport:
    """Iterate a hyperbolic map from each start point.

    Each orbit must advance monotonically through its complementary arc from
    the repelling toward the attracting fixed point, and end within chordal
    distance ``sqrt(tol)`` of it.  Needs rational fixed points.
    """
    fp = fixed_points(m)
    if fp.kind != "hyperbolic" or not fp.exact:
        raise ValueError("north-south check needs a hyperbolic map with rational fixed points")
    att, rep = fp.attracting, fp.repelling
    failures = []
    for x0 in starts:
        x0 = point(x0)
        if x0 in (att, rep):
            continue
        x = x0
        for k in range(iterations):
            y = apply(m, x)
            if y == att:
                x = y
                break
            if cyclic_ordered(rep, x, att) != cyclic_ordered(rep, y, att) or cyclic_ordered(
                rep, x, y
            ) != cyclic_ordered(rep, x, att):
                failures.append((format_point(x0), k, "not monotone"))
                break
            x = y
        else:
            if chordal_sq(x, att) > tol:
                failures.append((format_point(x0), iterations, "did not converge"))
    return NorthSouthReport(not failures, failures)


# -- invariance --------------------------------------------------------------


def invariance_check(t, m: MobiusMap, config: Configuration) -> list[Violation]:
    """Quadruples whose cross ratio changes under ``m``.

    ``t`` is ``"canonical"`` (evaluated at the moved points directly) or a
    :class:`CrossRatioTable` on ``config``, in which case ``m`` must permute
    the configuration.
    """
    pts = config.points
    bad = []
    if isinstance(t, str):
        if t != "canonical":
            raise ValueError(f"unknown cross ratio {t!r}")
        # m is a bijection of RP^1, so the moved points are distinct; compare
        # linking signs on cyclic positions before and after
        before = config.positions
        after = Configuration([apply(m, x) for x in pts]).positions
        for q in itertools.permutations(range(len(pts)), 4):
            b, a = label_linking(before, *q), label_linking(after, *q)
            if a != b:
                bad.append(Violation("invariance", q, Fraction(a), Fraction(b)))
        return bad
    where = {x: i for i, x in enumerate(pts)}
    image = []
    for x in pts:
        y = apply(m, x)
        if y not in where:
            raise OrbitEscapeError(f"{m} moves {format_point(x)} to {format_point(y)}, outside the configuration")
        image.append(where[y])
    for q, v in t.values.items():
        w = t.values[tuple(image[i] for i in q)]
        if w != v:
            bad.append(Violation("invariance", q, w, v))
    return bad


# -- orbit cocycles ------------------------------------------------------------

PhiGeom = Callable[[BoundaryPoint, BoundaryPoint, BoundaryPoint], Fraction]


def orbit_cocycle(phi: PhiGeom, xi, g1, g2, g3) -> Fraction:
    """phi(g1 xi, g2 xi, g3 xi)."""
    return phi(apply(g1, xi), apply(g2, xi), apply(g3, xi))


def nu_cochain(cr, xi, eta, gamma: MobiusMap) -> Fraction:
    """[gamma xi, eta, xi, gamma eta] for a cross ratio ``cr`` on boundary points.

    ``cr`` is a function of four points, or a :class:`CrossRatioTable` carrying
    its configuration.
    """
    pts = (apply(gamma, xi), eta, xi, apply(gamma, eta))
    if len(set(pts)) < 4:
        raise CollisionError(f"points {[format_point(x) for x in pts]} are not pairwise distinct")
    if isinstance(cr, CrossRatioTable):
        if cr.config is None:
            raise ValueError("table needs a configuration")
        try:
            labels = [cr.config.index(x) for x in pts]
        except ValueError:
            raise OrbitEscapeError("orbit point outside the table's configuration") from None
        return cr(*labels)
    return Fraction(cr(*pts))


def prism_transfer(phi: PhiGeom, xi, eta, g1, g2) -> Fraction:
    """phi(g1 xi, g1 eta, g2 eta) - phi(g1 xi, g2 xi, g2 eta).

    Its coboundary is the difference of the orbit cocycles at ``eta`` and ``xi``.
    """
    a1, b1 = apply(g1, xi), apply(g1, eta)
    a2, b2 = apply(g2, xi), apply(g2, eta)
    return phi(a1, b1, b2) - phi(a1, a2, b2)


# -- words ---------------------------------------------------------------------

LETTERS = "gGhH"


def _inv_letter(c: str) -> str:
    return c.swapcase()


def reduce_word(w: str) -> str:
    out: list[str] = []
    for c in w:
        if c not in LETTERS:
            raise ValueError(f"bad letter {c!r} in word {w!r}")
        if out and out[-1] == _inv_letter(c):
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def inverse_word(w: str) -> str:
    return "".join(_inv_letter(c) for c in reversed(w))


def multiply(w1: str, w2: str) -> str:
    return reduce_word(w1 + w2)


def reduced_words(max_len: int) -> Iterator[str]:
    """Reduced words of length <= max_len, shortest first then lexicographic in 'gGhH'."""
    layer = [""]
    yield ""
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for c in LETTERS:
                if w and w[-1] == _inv_letter(c):
                    continue
                nxt.append(w + c)
        yield from nxt
        layer = nxt


G_PINGPONG = MobiusMap(2, 0, 0, 1)
S_CONJ = MobiusMap(1, 1, -1, 1)
H_PINGPONG = compose(compose(S_CONJ, G_PINGPONG), inverse(S_CONJ))


class WordEvaluator:
    """Evaluates words to maps, caching every reduced prefix."""

    def __init__(self, g: MobiusMap = G_PINGPONG, h: MobiusMap = H_PINGPONG):
        self.gens = {"g": g, "G": inverse(g), "h": h, "H": inverse(h)}
        self._cache = {"": IDENTITY}

    def __call__(self, word: str) -> MobiusMap:
        word = reduce_word(word)
        m = self._cache.get(word)
        if m is None:
            m = compose(self(word[:-1]), self.gens[word[-1]])
            self._cache[word] = m
        return m


# -- quasimorphisms ------------------------------------------------------------


def count_occurrences(w: str, x: str) -> int:
    return sum(1 for i in range(len(x) - len(w) + 1) if x[i : i + len(w)] == w)


def brooks_counting(w: str, x: str) -> int:
    """Occurrences of ``w`` in reduced ``x`` minus occurrences of its inverse."""
    if not w or reduce_word(w) != w:
        raise ValueError("pattern must be a nonempty reduced word")
    x = reduce_word(x)
    return count_occurrences(w, x) - count_occurrences(inverse_word(w), x)


def brooks(w: str) -> Callable[[str], int]:
    return lambda x: brooks_counting(w, x)


def exponent_sum(letter: str) -> Callable[[str], int]:
    if letter not in "gh":
        raise ValueError("exponent sums are taken over g or h")
    return lambda x: x.count(letter) - x.count(letter.upper())


def defect_scan(q: Callable[[str], Fraction], max_len: int):
    """Largest |q(a) + q(b) - q(ab)| over reduced words of length <= max_len.

    Returns ``(defect, witness)`` where the witness is the first pair
    attaining the maximum in enumeration order, or None when the defect is 0.
    """
    words = list(reduced_words(max_len))
    qv = {w: Fraction(q(w)) for w in words}
    best, witness = Fraction(0), None
    for a in words:
        for b in words:
            ab = multiply(a, b)
            qab = qv[ab] if ab in qv else Fraction(q(ab))
            d = abs(qv[a] + qv[b] - qab)
            if d > best:
                best, witness = d, (a, b)
    return best, witness


def quasimorphism_defect(q: Callable[[str], Fraction], max_len: int) -> Fraction:
    return defect_scan(q, max_len)[0]


# -- exhaustive checks over words -------------------------------------------------


def _scaled(values) -> tuple[np.ndarray, int]:
    den = 1
    for v in values.flat:
        den = _lcm(den, v.denominator)
    return np.vectorize(lambda v: int(v * den), otypes=[np.int64])(values), den


def orbit_cocycle_array(phi: PhiGeom, xi, maps) -> np.ndarray:
    """The table phi(g_i xi, g_j xi, g_k xi) over a list of maps, as Fractions."""
    orbit = [apply(m, xi) for m in maps]
    k = len(orbit)
    out = np.empty((k, k, k), dtype=object)
    for i, j, l in itertools.product(range(k), repeat=3):
        out[i, j, l] = Fraction(phi(orbit[i], orbit[j], orbit[l]))
    return out


def orbit_cocycle_defects(phi: PhiGeom, xi, maps) -> dict:
    """Count alternation and closedness failures of the orbit cocycle.

    Closedness is checked on every 4-tuple of the given maps.
    """
    vals, _ = _scaled(orbit_cocycle_array(phi, xi, maps))
    alt = 0
    for axes in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
        alt += int(np.count_nonzero(vals + vals.transpose(axes)))
    # (a,b,c,d) -> phi(b,c,d) - phi(a,c,d) + phi(a,b,d) - phi(a,b,c)
    d = (
        vals[None, :, :, :]
        - vals[:, None, :, :]
        + vals[:, :, None, :]
        - vals[:, :, :, None]
    )
    return {"alternation": alt, "closedness": int(np.count_nonzero(d)), "tuples": d.size}


def basepoint_change_defects(phi: PhiGeom, xi, eta, maps, labels=None) -> list:
    """Triples where mu_eta - mu_xi differs from the coboundary of the prism transfer."""
    labels = labels if labels is not None else list(range(len(maps)))
    xs = [apply(m, xi) for m in maps]
    ys = [apply(m, eta) for m in maps]
    k = len(maps)
    h = {}
    for i in range(k):
        for j in range(k):
            h[(i, j)] = phi(xs[i], ys[i], ys[j]) - phi(xs[i], xs[j], ys[j])
    bad = []
    for i, j, l in itertools.product(range(k), repeat=3):
        lhs = phi(ys[i], ys[j], ys[l]) - phi(xs[i], xs[j], xs[l])
        rhs = h[(j, l)] - h[(i, l)] + h[(i, j)]
        if lhs != rhs:
            bad.append((labels[i], labels[j], labels[l]))
    return bad
