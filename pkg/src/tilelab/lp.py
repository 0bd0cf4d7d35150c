"""A small exact simplex solver over :class:`fractions.Fraction`.

Only the form ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` is
supported, so the origin is always feasible and no phase one is needed.
Bland's rule guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Unbounded(Exception):
    pass


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, list[Fraction]]:
    """Return ``(optimum, x)`` for ``max c.x`` subject to ``A x <= b``, ``x >= 0``."""
    n = len(c)
    rows = len(A)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")
    width = n + rows
    T = []
    for i, row in enumerate(A):
        r = [Fraction(v) for v in row] + [Fraction(0)] * rows + [Fraction(b[i])]
        r[n + i] = Fraction(1)
        T.append(r)
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * (rows + 1)
    basis = list(range(n, n + rows))

    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective is unbounded")
        pivot_row = T[leave]
        p = pivot_row[enter]
        if p != 1:
            pivot_row = T[leave] = [v / p for v in pivot_row]
        nz = [j for j, v in enumerate(pivot_row) if v]
        for i in range(rows):
            if i != leave:
                f = T[i][enter]
                if f:
                    row = T[i]
                    for j in nz:
                        row[j] -= f * pivot_row[j]
        f = obj[enter]
        if f:
            for j in nz:
                obj[j] -= f * pivot_row[j]
        basis[leave] = enter

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i][-1]
    return obj[-1], x
