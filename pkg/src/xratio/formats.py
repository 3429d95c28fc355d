"""JSON forms of configurations, tables, cochains, measures and graphs.

Loaders accept a generating set of entries and complete it using the
defining identities; they reject inconsistent input, naming the first
offending instance.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .circle import Configuration, point
from .cocycles import AltCochain2, CrossRatioTable, check_axioms, quadruples, triples
from .hyperbolic import FiniteGraphSpace
from .measures import RectMeasure, check_measure, cyclically_ordered, rectangles


class FormatError(ValueError):
    """Structurally malformed or underdetermined input."""


class InconsistentError(ValueError):
    """Input whose entries contradict the defining identities."""


def frac(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str, Fraction)):
        raise FormatError(f"expected an exact rational, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {v!r}") from exc


def render(v):
    """Exact string for rationals; containers are rendered recursively."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): render(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [render(x) for x in v]
    return v


def config_from_json(pts) -> Configuration:
    if not isinstance(pts, list):
        raise FormatError("configuration must be a JSON array")
    try:
        return Configuration([point(p) for p in pts])
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


# -- cross ratio tables ----------------------------------------------------------


def _orbit(q):
    """The eight reorderings reachable by the first two axioms, with signs."""
    a, b, c, d = q
    base = [((a, b, c, d), 1), ((b, a, c, d), -1), ((a, b, d, c), -1), ((b, a, d, c), 1)]
    return base + [((w, x, y, z), -s) for (y, z, w, x), s in base]


def table_to_json(t: CrossRatioTable) -> dict:
    """One entry per orbit of the first two axioms (three per 4-subset)."""
    seen = set()
    entries = []
    for q in quadruples(t.n):
        if q in seen:
            continue
        seen.update(k for k, _ in _orbit(q))
        entries.append({"q": list(q), "v": str(t.values[q])})
    out = {"n": t.n, "entries": entries}
    if t.config is not None:
        out["config"] = t.config.to_json()
    return out


def table_from_json(d: dict) -> CrossRatioTable:
    try:
        n = int(d["n"])
        raw = d["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"table needs 'n' and 'entries': {exc}") from exc
    config = config_from_json(d["config"]) if "config" in d else None
    if config is not None and len(config) != n:
        raise FormatError("config length does not match n")
    vals: dict = {}

    def put(q, v, why):
        old = vals.get(q)
        if old is None:
            vals[q] = v
            return True
        if old != v:
            raise InconsistentError(f"inconsistent value at {q}: {old} vs {v} ({why})")
        return False

    for e in raw:
        q = tuple(int(i) for i in e["q"])
        if len(q) != 4 or len(set(q)) != 4 or not all(0 <= i < n for i in q):
            raise FormatError(f"bad quadruple {e['q']}")
        put(q, frac(e["v"]), "given")
    changed = True
    while changed:
        changed = False
        for q in list(vals):
            for k, s in _orbit(q):
                changed |= put(k, s * vals[q], f"symmetry of {q}")
        for x, x1, x2, y, y1 in itertools.permutations(range(n), 5):
            a, b, c = (x, x1, y, y1), (x1, x2, y, y1), (x, x2, y, y1)
            known = [k in vals for k in (a, b, c)]
            if sum(known) != 2:
                continue
            if not known[0]:
                changed |= put(a, vals[c] - vals[b], f"additivity {(x, x1, x2, y, y1)}")
            elif not known[1]:
                changed |= put(b, vals[c] - vals[a], f"additivity {(x, x1, x2, y, y1)}")
            else:
                changed |= put(c, vals[a] + vals[b], f"additivity {(x, x1, x2, y, y1)}")
    missing = [q for q in quadruples(n) if q not in vals]
    if missing:
        raise FormatError(f"entries do not determine the table; e.g. {missing[0]} is free")
    t = CrossRatioTable(n, vals, config)
    bad = check_axioms(t)
    if bad:
        raise InconsistentError(f"table violates the axioms: {bad[0]}")
    return t


# -- cochains ----------------------------------------------------------------


def cochain_to_json(phi: AltCochain2) -> dict:
    entries = [
        {"t": list(tr), "v": str(phi.values[tr])}
        for tr in itertools.combinations(range(phi.n), 3)
        if phi.values[tr]
    ]
    return {"n": phi.n, "entries": entries}


def cochain_from_json(d: dict) -> AltCochain2:
    """Entries are completed by alternation; unlisted 3-subsets are zero."""
    try:
        n = int(d["n"])
        raw = d["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"cochain needs 'n' and 'entries': {exc}") from exc
    vals: dict = {}
    for e in raw:
        tr = tuple(int(i) for i in e["t"])
        if len(tr) != 3 or len(set(tr)) != 3 or not all(0 <= i < n for i in tr):
            raise FormatError(f"bad triple {e['t']}")
        v = frac(e["v"])
        for perm in itertools.permutations(range(3)):
            k = tuple(tr[i] for i in perm)
            s = _perm_sign(perm)
            if k in vals and vals[k] != s * v:
                raise InconsistentError(f"inconsistent value at {k}")
            vals[k] = s * v
    for tr in triples(n):
        vals.setdefault(tr, Fraction(0))
    return AltCochain2(n, vals)


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


# -- measures ----------------------------------------------------------------


def measure_to_json(m: RectMeasure) -> dict:
    rects = [
        {"ab": [a, b], "cd": [c, d], "v": str(v)}
        for (a, b, c, d), v in sorted(m.values.items())
    ]
    return {"config": m.config.to_json(), "rects": rects}


def measure_from_json(d: dict) -> RectMeasure:
    try:
        config = config_from_json(d["config"])
        raw = d["rects"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"measure needs 'config' and 'rects': {exc}") from exc
    n = len(config)
    pos = config.positions
    vals: dict = {}

    def put(k, v, why):
        old = vals.get(k)
        if old is None:
            vals[k] = v
            return True
        if old != v:
            raise InconsistentError(f"inconsistent value at rectangle {k}: {old} vs {v} ({why})")
        return False

    for e in raw:
        k = tuple(int(i) for i in e["ab"]) + tuple(int(i) for i in e["cd"])
        if len(k) != 4 or len(set(k)) != 4 or not all(0 <= i < n for i in k):
            raise FormatError(f"bad rectangle {e}")
        if not cyclically_ordered(pos, k):
            raise FormatError(f"arcs of rectangle {k} overlap")
        put(k, frac(e["v"]), "given")
    changed = True
    while changed:
        changed = False
        for (a, b, c, dd), v in list(vals.items()):
            changed |= put((c, dd, a, b), -v, f"flip of {(a, b, c, dd)}")
        for a, b, b1, c, dd in itertools.permutations(range(n), 5):
            if not cyclically_ordered(pos, (a, b, b1, c, dd)):
                continue
            x, y, z = (a, b, c, dd), (b, b1, c, dd), (a, b1, c, dd)
            known = [k in vals for k in (x, y, z)]
            if sum(known) != 2:
                continue
            why = f"additivity {(a, b, b1, c, dd)}"
            if not known[0]:
                changed |= put(x, vals[z] - vals[y], why)
            elif not known[1]:
                changed |= put(y, vals[z] - vals[x], why)
            else:
                changed |= put(z, vals[x] + vals[y], why)
    missing = [k for k in rectangles(config) if k not in vals]
    if missing:
        raise FormatError(f"rectangles do not determine the measure; e.g. {missing[0]} is free")
    m = RectMeasure(config, vals)
    bad = check_measure(m)
    if bad:
        raise InconsistentError(f"measure violates {bad[0]}")
    return m


# -- graphs ------------------------------------------------------------------


def graph_from_json(d: dict) -> FiniteGraphSpace:
    try:
        return FiniteGraphSpace(int(d["n"]), [tuple(e) for e in d["edges"]])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"graph needs 'n' and 'edges': {exc}") from exc
