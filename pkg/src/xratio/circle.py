"""The circle as the projective line Q u {inf}, with its cyclic order.

Points are ``fractions.Fraction`` instances or the singleton :data:`INF`.
All predicates are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union


class DuplicatePointError(ValueError):
    """Raised when an operation needs pairwise distinct points."""


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

BoundaryPoint = Union[Fraction, _Infinity]


def point(x) -> BoundaryPoint:
    """Coerce ``x`` into a canonical boundary point.

    Accepts ints, Fractions, strings such as ``"3"``, ``"-2/6"`` or ``"inf"``,
    and :data:`INF` itself.
    """
    if x is INF:
        return INF
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        return Fraction(s)
    if isinstance(x, bool):
        raise TypeError("booleans are not boundary points")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a point of RP^1")


def format_point(x: BoundaryPoint) -> str:
    return "inf" if x is INF else str(x)


def _key(x: BoundaryPoint):
    # inf sits after every rational; the cyclic order closes up from there.
    return (1, 0) if x is INF else (0, x)


def _ccw(ka, kb, kc) -> bool:
    return ka < kb < kc or kb < kc < ka or kc < ka < kb


def _require_distinct(*pts):
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise DuplicatePointError(
                    f"points {i} and {j} coincide ({format_point(pts[i])})"
                )


def cyclic_ordered(x: BoundaryPoint, y: BoundaryPoint, z: BoundaryPoint) -> bool:
    """True iff ``(x, y, z)`` is positively cyclically ordered on RP^1."""
    _require_distinct(x, y, z)
    return _ccw(_key(x), _key(y), _key(z))


def quadruple_ordered(a, b, c, d) -> bool:
    """True iff ``(a, b, c, d)`` occur in this cyclic order."""
    _require_distinct(a, b, c, d)
    ka, kb, kc, kd = _key(a), _key(b), _key(c), _key(d)
    return _ccw(ka, kb, kc) and _ccw(ka, kc, kd)


class Linking(enum.Enum):
    UNLINKED = "unlinked"
    POSITIVE = "positively_linked"
    NEGATIVE = "negatively_linked"

    @property
    def sign(self) -> int:
        return {Linking.UNLINKED: 0, Linking.POSITIVE: 1, Linking.NEGATIVE: -1}[self]


def _linking_keys(ka, kb, kc, kd) -> int:
    # sign of the crossing of the chord a->b with the chord c->d
    if _ccw(ka, kc, kb):
        return 1 if _ccw(kb, kd, ka) else 0
    return -1 if _ccw(ka, kd, kb) else 0


def linking(a, b, c, d) -> Linking:
    """How the pair ``{c, d}`` sits relative to the pair ``{a, b}``."""
    _require_distinct(a, b, c, d)
    s = _linking_keys(_key(a), _key(b), _key(c), _key(d))
    return {0: Linking.UNLINKED, 1: Linking.POSITIVE, -1: Linking.NEGATIVE}[s]


def canonical_cross_ratio(a, b, c, d) -> int:
    """The order cross ratio: 0 on unlinked quadruples, +1/-1 on linked ones.

    A quadruple whose first two entries coincide has value 0; any other
    coincidence raises :class:`DuplicatePointError`.
    """
    if a == b and len({_key(a), _key(c), _key(d)}) == 3:
        return 0
    return linking(a, b, c, d).sign


def canonical_phi(x, y, z) -> Fraction:
    """Orientation cocycle on the circle: +-1/2 by cyclic order, 0 if degenerate."""
    kx, ky, kz = _key(x), _key(y), _key(z)
    if kx == ky or ky == kz or kx == kz:
        return Fraction(0)
    return Fraction(1, 2) if _ccw(kx, ky, kz) else Fraction(-1, 2)


@dataclass(frozen=True)
class Configuration:
    """A finite labelled set of pairwise distinct points of RP^1.

    Label ``i`` refers to ``points[i]``.
    """

    points: tuple

    def __init__(self, points: Sequence):
        pts = tuple(point(p) for p in points)
        _require_distinct(*pts)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def positions(self) -> tuple:
        """Rank of each label along the cyclic order (starting after inf)."""
        order = sorted(range(len(self.points)), key=lambda i: _key(self.points[i]))
        pos = [0] * len(order)
        for rank, label in enumerate(order):
            pos[label] = rank
        return tuple(pos)

    @property
    def cyclic_labels(self) -> tuple:
        """Labels listed in cyclic order."""
        return tuple(sorted(range(len(self.points)), key=lambda i: _key(self.points[i])))

    def index(self, x) -> int:
        return self.points.index(point(x))

    def to_json(self) -> list:
        return [format_point(p) for p in self.points]

    @classmethod
    def standard(cls, n: int) -> "Configuration":
        """The integers ``0, ..., n-1``; labels then agree with cyclic positions."""
        return cls(range(n))


def label_cyclic(pos, i, j, k) -> bool:
    """Cyclic order of labels given their positions (see :attr:`Configuration.positions`)."""
    return _ccw(pos[i], pos[j], pos[k])


def label_linking(pos, a, b, c, d) -> int:
    return _linking_keys(pos[a], pos[b], pos[c], pos[d])
