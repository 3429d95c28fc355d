"""Exact Gaussian elimination over the rationals on sparse rows.

Rows are ``dict`` objects mapping a column index to a nonzero ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class RowReducer:
    """Incremental reduced row echelon form.

    Rows are fed one at a time; the reducer keeps every pivot row fully
    reduced against every other pivot, so the null space can be read off
    directly once all rows are in.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}
        # column -> set of pivot columns whose row has a nonzero entry there
        self._uses: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict) -> dict:
        row = {c: Fraction(v) for c, v in row.items() if v}
        hits = [c for c in row if c in self.pivots]
        while hits:
            c = hits.pop()
            f = row.get(c)
            if not f:
                continue
            for k, v in self.pivots[c].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                    if k in self.pivots and k != c:
                        hits.append(k)
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Add a row; return True if it raised the rank."""
        row = self._reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for q in list(self._uses.get(p, ())):
            prow = self.pivots[q]
            f = prow.get(p)
            if not f:
                continue
            for k, v in row.items():
                nv = prow.get(k, 0) - f * v
                if nv:
                    prow[k] = nv
                    self._uses.setdefault(k, set()).add(q)
                else:
                    prow.pop(k, None)
        self.pivots[p] = row
        for k in row:
            self._uses.setdefault(k, set()).add(p)
        return True

    def nullspace(self) -> list[dict[int, Fraction]]:
        """Basis of the solution space of the homogeneous system, one dict per vector."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free:
            vec = {f: Fraction(1)}
            for p in self._uses.get(f, ()):
                v = self.pivots[p].get(f)
                if v and p != f:
                    vec[p] = -v
            basis.append(vec)
        return basis


def nullspace(rows: Iterable[dict], ncols: int) -> list[dict[int, Fraction]]:
    red = RowReducer(ncols)
    for r in rows:
        red.add(r)
    return red.nullspace()


def rank(rows: Iterable[dict], ncols: int) -> int:
    red = RowReducer(ncols)
    for r in rows:
        red.add(r)
    return red.rank
