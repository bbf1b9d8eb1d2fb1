"""Exact sparse row reduction over Q.

Rows are dicts ``column -> Fraction`` with integer columns; the pivot of a
row is its smallest column, so callers encode pivot preference in the column
numbering.  Pivot rows are kept fully reduced against each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Optional


class Echelon:
    def __init__(self, track: bool = False):
        self.pivots: dict = {}  # pivot column -> (row, combination)
        self.track = track

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict, combo: Optional[dict] = None) -> tuple:
        row = dict(row)
        combo = dict(combo or {}) if self.track else None
        for col in [c for c in row if c in self.pivots]:
            f = row.get(col)
            if not f:
                continue
            prow, pcombo = self.pivots[col]
            _axpy(row, -f, prow)
            if combo is not None:
                _axpy(combo, -f, pcombo)
        return row, combo

    def add(self, row: dict, tag: Hashable = None) -> bool:
        """Insert a row; return True when it increased the rank."""
        combo = {tag: Fraction(1)} if self.track else None
        row, combo = self.reduce(row, combo)
        if not row:
            return False
        piv = min(row)
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        if combo is not None:
            combo = {t: v * inv for t, v in combo.items()}
        for col, (prow, pcombo) in self.pivots.items():
            f = prow.get(piv)
            if f:
                _axpy(prow, -f, row)
                if combo is not None:
                    _axpy(pcombo, -f, combo)
        self.pivots[piv] = (row, combo)
        return True


def _axpy(target: dict, a: Fraction, src: dict) -> None:
    for k, v in src.items():
        s = target.get(k, 0) + a * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def rank(rows) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return e.rank
