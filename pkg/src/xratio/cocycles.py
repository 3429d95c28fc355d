"""Cross ratio tables, alternating 2-cochains and the maps between them.

Everything here lives on a finite label set ``{0, ..., n-1}``; no group
action is involved.  Values are ``Fraction`` throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .circle import Configuration, label_cyclic, label_linking
from .linalg import RowReducer

ZERO = Fraction(0)
HALF = Fraction(1, 2)


class AxiomViolationError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


class SizeError(ValueError):
    pass


class Violation(NamedTuple):
    rule: str
    instance: tuple
    lhs: Fraction
    rhs: Fraction

    def __str__(self):
        return f"{self.rule} at {self.instance}: {self.lhs} != {self.rhs}"


def quadruples(n: int):
    return itertools.permutations(range(n), 4)


def triples(n: int):
    return itertools.permutations(range(n), 3)


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True, eq=False)
class CrossRatioTable:
    """A function on ordered 4-tuples of distinct labels.

    ``values`` holds every ordered 4-tuple of distinct labels.  Calling the
    table on a tuple whose first two labels agree returns 0.  ``config`` is
    optional and only needed where the labels must be placed on the circle.
    """

    n: int
    values: dict
    config: Optional[Configuration] = field(default=None, compare=False)

    @classmethod
    def from_function(cls, n, f, config=None) -> "CrossRatioTable":
        return cls(n, {q: _frac(f(*q)) for q in quadruples(n)}, config)

    @classmethod
    def zero(cls, n, config=None):
        return cls(n, dict.fromkeys(quadruples(n), ZERO), config)

    @classmethod
    def canonical(cls, config) -> "CrossRatioTable":
        """The order cross ratio restricted to a configuration."""
        if isinstance(config, int):
            config = Configuration.standard(config)
        pos = config.positions
        return cls.from_function(
            len(config), lambda a, b, c, d: label_linking(pos, a, b, c, d), config
        )

    def __call__(self, a, b, c, d) -> Fraction:
        if a == b:
            return ZERO
        return self.values[(a, b, c, d)]

    def __eq__(self, other):
        if not isinstance(other, CrossRatioTable):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __add__(self, other):
        return CrossRatioTable(
            self.n, {q: v + other.values[q] for q, v in self.values.items()}, self.config
        )

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = _frac(c)
        return CrossRatioTable(self.n, {q: c * v for q, v in self.values.items()}, self.config)

    def __neg__(self):
        return (-1) * self

    def with_config(self, config):
        return CrossRatioTable(self.n, self.values, config)

    def is_zero(self) -> bool:
        return not any(self.values.values())


@dataclass(frozen=True, eq=False)
class AltCochain2:
    """A function on ordered triples of labels, zero on degenerate triples."""

    n: int
    values: dict

    @classmethod
    def from_function(cls, n, f) -> "AltCochain2":
        return cls(n, {t: _frac(f(*t)) for t in triples(n)})

    @classmethod
    def zero(cls, n):
        return cls(n, dict.fromkeys(triples(n), ZERO))

    def __call__(self, a, b, c) -> Fraction:
        if a == b or b == c or a == c:
            return ZERO
        return self.values[(a, b, c)]

    def __eq__(self, other):
        if not isinstance(other, AltCochain2):
            return NotImplemented
        return self.n == other.n and self.values == other.values

    def __add__(self, other):
        return AltCochain2(self.n, {t: v + other.values[t] for t, v in self.values.items()})

    def __rmul__(self, c):
        c = _frac(c)
        return AltCochain2(self.n, {t: c * v for t, v in self.values.items()})

    def sup(self) -> Fraction:
        return max((abs(v) for v in self.values.values()), default=ZERO)


@dataclass(frozen=True)
class Cochain1:
    """A function on ordered pairs of labels (diagonal included)."""

    values: dict

    @classmethod
    def from_function(cls, labels, f):
        return cls({(x, y): _frac(f(x, y)) for x in labels for y in labels})

    def __call__(self, x, y) -> Fraction:
        return self.values[(x, y)]


# -- axioms ------------------------------------------------------------------


def check_axioms(t: CrossRatioTable) -> list[Violation]:
    """Every instance of the three cross ratio axioms that fails, in a fixed order."""
    bad = []
    v = t.values
    for q in quadruples(t.n):
        a, b, c, d = q
        if v[(b, a, c, d)] != -v[q]:
            bad.append(Violation("i", q, v[(b, a, c, d)], -v[q]))
        if v[(c, d, a, b)] != -v[q]:
            bad.append(Violation("ii", q, v[(c, d, a, b)], -v[q]))
    for x, x1, x2, y, y1 in itertools.permutations(range(t.n), 5):
        lhs = v[(x, x1, y, y1)] + v[(x1, x2, y, y1)]
        rhs = v[(x, x2, y, y1)]
        if lhs != rhs:
            bad.append(Violation("iii", (x, x1, x2, y, y1), lhs, rhs))
    return bad


def _require_axioms(t):
    bad = check_axioms(t)
    if bad:
        raise AxiomViolationError(f"{len(bad)} axiom violation(s), first: {bad[0]}")


# -- cross ratio -> cochain ------------------------------------------------


def phi_from_crossratio(t: CrossRatioTable, xi, eta, zeta, nu) -> Fraction:
    """Half the sum of the three brackets [xi,zeta,eta,nu], [zeta,eta,xi,nu], [eta,xi,zeta,nu]."""
    if xi == eta or eta == zeta or xi == zeta:
        return ZERO
    if nu in (xi, eta, zeta):
        raise ValueError(f"auxiliary label {nu} collides with the triple {(xi, eta, zeta)}")
    return HALF * (t(xi, zeta, eta, nu) + t(zeta, eta, xi, nu) + t(eta, xi, zeta, nu))


def nu_spread(t: CrossRatioTable, xi, eta, zeta) -> set:
    """All values of :func:`phi_from_crossratio` over admissible auxiliary labels."""
    return {
        phi_from_crossratio(t, xi, eta, zeta, nu)
        for nu in range(t.n)
        if nu not in (xi, eta, zeta)
    }


def cochain_from_crossratio(t: CrossRatioTable, check: bool = True) -> AltCochain2:
    if t.n < 4:
        raise SizeError("need at least four labels")
    if check:
        _require_axioms(t)
    vals = {}
    for tr in triples(t.n):
        nu = next(k for k in range(t.n) if k not in tr)
        vals[tr] = phi_from_crossratio(t, *tr, nu)
    return AltCochain2(t.n, vals)


# -- coboundaries ------------------------------------------------------------


def coboundary1(b: Callable) -> Callable:
    """(x, y, z) -> b(y, z) - b(x, z) + b(x, y)."""

    def db(x, y, z):
        return b(y, z) - b(x, z) + b(x, y)

    return db


def coboundary2(phi: Callable) -> Callable:
    """(a, b, c, d) -> phi(b,c,d) - phi(a,c,d) + phi(a,b,d) - phi(a,b,c)."""

    def dphi(a, b, c, d):
        return phi(b, c, d) - phi(a, c, d) + phi(a, b, d) - phi(a, b, c)

    return dphi


_TRANSPOSITIONS = ((1, 0, 2), (0, 2, 1), (2, 1, 0))


def alternation_defects(phi: AltCochain2) -> list[Violation]:
    bad = []
    for tr in triples(phi.n):
        for perm in _TRANSPOSITIONS:
            other = tuple(tr[i] for i in perm)
            if phi.values[other] != -phi.values[tr]:
                bad.append(Violation("alternating", tr + other, phi.values[other], -phi.values[tr]))
    return bad


def cocycle_defects(phi: AltCochain2) -> list[Violation]:
    d = coboundary2(phi)
    bad = []
    for q in itertools.product(range(phi.n), repeat=4):
        val = d(*q)
        if val:
            bad.append(Violation("cocycle", q, val, ZERO))
    return bad


def is_cocycle(phi: AltCochain2) -> bool:
    return not alternation_defects(phi) and not cocycle_defects(phi)


# -- cochain -> cross ratio --------------------------------------------------


def crossratio_from_cocycle(phi: AltCochain2, check: bool = True) -> CrossRatioTable:
    """[g, g', h, h'] = phi(h, g', g) - phi(g', g, h')."""
    if check:
        bad = alternation_defects(phi) or cocycle_defects(phi)
        if bad:
            raise NotACocycleError(f"{len(bad)} defect(s), first: {bad[0]}")
    return CrossRatioTable.from_function(phi.n, lambda g, g1, h, h1: phi(h, g1, g) - phi(g1, g, h1))


# -- norms -------------------------------------------------------------------


def sup_norm(t: CrossRatioTable) -> Fraction:
    return max((abs(v) for v in t.values.values()), default=ZERO)


def max_value(t: CrossRatioTable) -> Fraction:
    """Largest raw value (no absolute value taken)."""
    return max(t.values.values(), default=ZERO)


# -- finite dimension counts -------------------------------------------------

CONSTRAINT_SETS = ("axioms_only", "axioms_plus_vanishing_on_ordered", "alternating_cocycles")


def _index(keys):
    return {k: i for i, k in enumerate(keys)}


def _axiom_rows(n, col):
    for q in quadruples(n):
        a, b, c, d = q
        yield {col[q]: 1, col[(b, a, c, d)]: 1}
        yield {col[q]: 1, col[(c, d, a, b)]: 1}
    for x, x1, x2, y, y1 in itertools.permutations(range(n), 5):
        row: dict = {}
        for key, s in (((x, x1, y, y1), 1), ((x1, x2, y, y1), 1), ((x, x2, y, y1), -1)):
            row[col[key]] = row.get(col[key], 0) + s
        yield row


def solution_space(n: int, constraints: str) -> list[dict]:
    """Basis of the homogeneous linear system named by ``constraints``.

    Labels are placed at the integers ``0..n-1`` for the vanishing constraint.
    Vectors are returned as ``{tuple: Fraction}`` dicts (missing keys are 0).
    """
    if not 4 <= n <= 8:
        raise SizeError(f"n must lie in [4, 8], got {n}")
    if constraints not in CONSTRAINT_SETS:
        raise ValueError(f"unknown constraint set {constraints!r}")
    if constraints == "alternating_cocycles":
        keys = list(triples(n))
        col = _index(keys)
        red = RowReducer(len(keys))
        for tr in keys:
            for perm in _TRANSPOSITIONS:
                other = tuple(tr[i] for i in perm)
                red.add({col[tr]: 1, col[other]: 1})
        for a, b, c, d in quadruples(n):
            red.add({col[(b, c, d)]: 1, col[(a, c, d)]: -1, col[(a, b, d)]: 1, col[(a, b, c)]: -1})
    else:
        keys = list(quadruples(n))
        col = _index(keys)
        red = RowReducer(len(keys))
        for row in _axiom_rows(n, col):
            red.add(row)
        if constraints == "axioms_plus_vanishing_on_ordered":
            pos = tuple(range(n))
            for q in keys:
                if _ordered(pos, q):
                    red.add({col[q]: 1})
    return [{keys[i]: v for i, v in vec.items()} for vec in red.nullspace()]


def _ordered(pos, q):
    a, b, c, d = q
    return label_cyclic(pos, a, b, c) and label_cyclic(pos, a, c, d)


def space_dimension(n: int, constraints: str) -> int:
    return len(solution_space(n, constraints))
