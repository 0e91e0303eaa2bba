"""Incremental exact row echelon form over the integers.

Rational rows are cleared of denominators on entry and every stored row is
divided by the gcd of its entries, so elimination never leaves the integers
and coefficients stay small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence


def integer_row(values: Mapping[int, Fraction] | Sequence) -> dict[int, int]:
    """Sparse primitive integer row proportional to ``values``."""
    if not isinstance(values, Mapping):
        values = dict(enumerate(values))
    items = [(k, Fraction(v)) for k, v in values.items() if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    row = {k: v.numerator * (den // v.denominator) for k, v in items}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()}


class EchelonBasis:
    """A growing set of linearly independent rows kept in echelon form.

    Each stored row has a distinct pivot column, which is also its leading
    (smallest) nonzero column.
    """

    def __init__(self):
        self._rows: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def rows(self) -> list[dict[int, int]]:
        """The stored rows, sorted by pivot column."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def reduce(self, values) -> dict[int, int]:
        """Remainder of ``values`` after elimination against the stored rows."""
        v = integer_row(values)
        for p in sorted(self._rows):
            a = v.get(p)
            if not a:
                continue
            row = self._rows[p]
            b = row[p]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            out = {k: fa * x for k, x in v.items()}
            for k, x in row.items():
                y = out.get(k, 0) - fb * x
                if y:
                    out[k] = y
                else:
                    out.pop(k, None)
            v = _primitive(out) if out else out
        return v

    def add(self, values) -> bool:
        """Insert ``values``; return True if it enlarged the span."""
        v = self.reduce(values)
        if not v:
            return False
        self._rows[min(v)] = v
        return True

    def contains(self, values) -> bool:
        return not self.reduce(values)


def rank(rows: Iterable) -> int:
    basis = EchelonBasis()
    for row in rows:
        basis.add(row)
    return basis.rank
