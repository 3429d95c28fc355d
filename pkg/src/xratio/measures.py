"""Finitely additive, flip-antiinvariant signed measures on rectangles.

A rectangle ``[a, b) x [c, d)`` uses half-open counterclockwise arcs with
endpoints taken from a configuration.  The two arcs are disjoint exactly when
``(a, b, c, d)`` is cyclically ordered, so a measure is stored as a dict over
cyclically ordered label quadruples.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .circle import Configuration, label_cyclic, label_linking
from .linalg import RowReducer
from .cocycles import (
    ZERO,
    AxiomViolationError,
    CrossRatioTable,
    Violation,
    check_axioms,
)


class MeasureViolationError(ValueError):
    pass


class BaseNotOrderedError(ValueError):
    pass


def cyclically_ordered(pos, labels) -> bool:
    """Whether the labels appear in this cyclic order (all distinct)."""
    ps = [pos[x] for x in labels]
    k = ps.index(min(ps))
    rot = ps[k:] + ps[:k]
    return all(u < v for u, v in zip(rot, rot[1:]))


def rectangles(config: Configuration):
    """All admissible rectangles as label quadruples, in lexicographic order."""
    pos = config.positions
    for q in itertools.permutations(range(len(config)), 4):
        if cyclically_ordered(pos, q):
            yield q


@dataclass(frozen=True, eq=False)
class RectMeasure:
    config: Configuration
    values: dict

    def __call__(self, a, b, c, d) -> Fraction:
        """The mass of ``[a, b) x [c, d)``."""
        return self.values[(a, b, c, d)]

    def __eq__(self, other):
        if not isinstance(other, RectMeasure):
            return NotImplemented
        return self.config == other.config and self.values == other.values

    def __add__(self, other):
        return RectMeasure(self.config, {k: v + other.values[k] for k, v in self.values.items()})

    def __rmul__(self, c):
        return RectMeasure(self.config, {k: Fraction(c) * v for k, v in self.values.items()})

    @classmethod
    def zero(cls, config):
        return cls(config, dict.fromkeys(rectangles(config), ZERO))

    def is_zero(self) -> bool:
        return not any(self.values.values())


def check_measure(m: RectMeasure) -> list[Violation]:
    bad = []
    v = m.values
    n = len(m.config)
    pos = m.config.positions
    for k, val in v.items():
        a, b, c, d = k
        if v[(c, d, a, b)] != -val:
            bad.append(Violation("flip", k, v[(c, d, a, b)], -val))
    for a, b, b1, c, d in itertools.permutations(range(n), 5):
        if not cyclically_ordered(pos, (a, b, b1, c, d)):
            continue
        lhs = v[(a, b, c, d)] + v[(b, b1, c, d)]
        rhs = v[(a, b1, c, d)]
        if lhs != rhs:
            bad.append(Violation("additivity", (a, b, b1, c, d), lhs, rhs))
    return bad


def arc_mass(config: Configuration, weights, a, b) -> Fraction:
    """Total weight of the labels lying in the half-open arc ``[a, b)``."""
    pos = config.positions
    total = Fraction(weights[a])
    for x in range(len(config)):
        if x not in (a, b) and label_cyclic(pos, a, x, b):
            total += weights[x]
    return total


def measure_from_atoms(config: Configuration, rho, sigma) -> RectMeasure:
    """mu[a,b) x [c,d) = rho[a,b) sigma[c,d) - sigma[a,b) rho[c,d).

    ``rho`` and ``sigma`` give a weight per label (sequence or dict).
    """
    vals = {}
    for a, b, c, d in rectangles(config):
        vals[(a, b, c, d)] = arc_mass(config, rho, a, b) * arc_mass(config, sigma, c, d) - arc_mass(
            config, sigma, a, b
        ) * arc_mass(config, rho, c, d)
    return RectMeasure(config, vals)


def psi(t: CrossRatioTable, config: Configuration = None, check: bool = True) -> RectMeasure:
    """Read a cross ratio off on ordered quadruples: mu[a,b) x [c,d) = [a,b,c,d]."""
    config = config or t.config
    if config is None:
        raise ValueError("psi needs the configuration the table lives on")
    if len(config) != t.n:
        raise ValueError("configuration size does not match the table")
    if check:
        bad = check_axioms(t)
        if bad:
            raise AxiomViolationError(f"{len(bad)} axiom violation(s), first: {bad[0]}")
    return RectMeasure(config, {q: t.values[q] for q in rectangles(config)})


def _unlinked_value(m: RectMeasure, pos, q) -> Fraction:
    # orient both pairs so the quadruple becomes a rectangle; each flip of a pair negates
    q0, q1, q2, q3 = q
    for (u, v, s1), (w, x, s2) in itertools.product(((q0, q1, 1), (q1, q0, -1)), ((q2, q3, 1), (q3, q2, -1))):
        if cyclically_ordered(pos, (u, v, w, x)):
            return s1 * s2 * m.values[(u, v, w, x)]
    raise AssertionError(f"{q} is linked")


def _cyclic_tuple(pos, subset):
    return tuple(sorted(subset, key=lambda i: pos[i]))


def linked_values(m: RectMeasure, base) -> dict:
    """Value [p, r, q, s] for every 4-subset, listed in cyclic order (p, q, r, s).

    Starts from the base subset with value 0 and moves one point at a time
    inside the gap between its neighbours; each move adds one measure term.
    """
    pos = m.config.positions
    n = len(m.config)
    start = _cyclic_tuple(pos, base)
    out = {start: ZERO}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(4):
            x, y, z, w = cur[i - 1], cur[i], cur[(i + 1) % 4], cur[(i + 2) % 4]
            for y1 in sorted(range(n), key=lambda j: pos[j]):
                if y1 in cur or not label_cyclic(pos, x, y1, z):
                    continue
                nxt = _cyclic_tuple(pos, (x, y1, z, w))
                if nxt in out:
                    continue
                # [x,z,y1,w] = [x,z,y1,y] + [x,z,y,w]
                out[nxt] = out[cur] + _unlinked_value(m, pos, (x, z, y1, y))
                queue.append(nxt)
    return out


def crossratio_from_measure(m: RectMeasure, base, check: bool = True) -> CrossRatioTable:
    """Rebuild a cross ratio whose measure is ``m``.

    ``base`` is an ordered quadruple ``(a, b, c, d)`` of labels; the linked
    value ``[a, c, b, d]`` is pinned to 0.  The result is unique up to adding a
    multiple of the canonical cross ratio, and this pins that multiple.
    """
    pos = m.config.positions
    base = tuple(base)
    if len(set(base)) != 4 or not cyclically_ordered(pos, base):
        raise BaseNotOrderedError(f"base {base} is not a cyclically ordered quadruple")
    if check:
        bad = check_measure(m)
        if bad:
            raise MeasureViolationError(f"{len(bad)} violation(s), first: {bad[0]}")
    linked = linked_values(m, base)
    vals = {}
    for q in itertools.permutations(range(len(m.config)), 4):
        a, b, c, d = q
        sign = label_linking(pos, a, b, c, d)
        if sign:
            vals[q] = sign * linked[_cyclic_tuple(pos, q)]
        else:
            vals[q] = _unlinked_value(m, pos, q)
    t = CrossRatioTable(len(m.config), vals, m.config)
    if check:
        bad = check_axioms(t)
        if bad:
            raise AxiomViolationError(f"reconstruction is not a cross ratio: {bad[0]}")
    return t


def measure_space_basis(config: Configuration) -> list[RectMeasure]:
    """Basis of all valid measures on ``config``, by exact elimination."""
    keys = list(rectangles(config))
    col = {k: i for i, k in enumerate(keys)}
    pos = config.positions
    red = RowReducer(len(keys))
    for a, b, c, d in keys:
        red.add({col[(a, b, c, d)]: 1, col[(c, d, a, b)]: 1})
    for a, b, b1, c, d in itertools.permutations(range(len(config)), 5):
        if cyclically_ordered(pos, (a, b, b1, c, d)):
            red.add({col[(a, b, c, d)]: 1, col[(b, b1, c, d)]: 1, col[(a, b1, c, d)]: -1})
    return [
        RectMeasure(config, {k: vec.get(i, ZERO) for k, i in col.items()})
        for vec in red.nullspace()
    ]
