"""Exact rational LP feasibility by dictionary simplex.

Solves systems ``rows[i] . x >= rhs[i]`` over free variables ``x`` with a
single artificial variable ``t`` (``rows[i] . x + t >= rhs[i]``, minimise
``t``). Bland's rule guarantees termination; all arithmetic is on
:class:`fractions.Fraction`, so the verdict is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["solve_feasibility"]


class _Dictionary:
    """basic[i] = const[i] + sum_j coef[i][j] * nonbasic[j]."""

    def __init__(self, rows, rhs, n):
        m = len(rows)
        self.n = n
        # variable ids: 0..n-1 free decision vars, n = artificial t, n+1+i = slack i
        self.basic = [n + 1 + i for i in range(m)]
        self.nonbasic = list(range(n))
        self.const = [-Fraction(b) for b in rhs]
        self.coef = [[Fraction(a) for a in row] for row in rows]

    def add_artificial(self):
        """Append t with coefficient 1 in every restricted row."""
        self.nonbasic.append(self.n)
        for var, row in zip(self.basic, self.coef):
            row.append(Fraction(0) if self.is_free(var) else Fraction(1))

    def is_free(self, var):
        return var < self.n

    def pivot(self, r, e):
        row = self.coef[r]
        piv = row[e]
        leaving = self.basic[r]
        # solve row r for the entering variable
        new_row = [-a / piv for a in row]
        new_row[e] = 1 / piv
        new_const = -self.const[r] / piv
        self.coef[r] = new_row
        self.const[r] = new_const
        for i, other in enumerate(self.coef):
            if i == r:
                continue
            f = other[e]
            if not f:
                continue
            for j, a in enumerate(new_row):
                if j == e:
                    other[j] = f * a
                elif a:
                    other[j] += f * a
            self.const[i] += f * new_const
        self.basic[r] = self.nonbasic[e]
        self.nonbasic[e] = leaving


def solve_feasibility(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    n: int,
) -> Optional[tuple[Fraction, ...]]:
    """Return some ``x`` with ``rows[i] . x >= rhs[i]`` for all i, or ``None``.

    The returned point is a basic feasible solution reached deterministically,
    so equal inputs always give equal outputs.
    """
    for row in rows:
        if len(row) != n:
            raise ValueError(f"row of length {len(row)} in a system over {n} variables")
    if not rows:
        return tuple(Fraction(0) for _ in range(n))

    d = _Dictionary(rows, rhs, n)

    # Free variables go into the basis first and then never leave it.
    for j in range(n):
        e = d.nonbasic.index(j)
        for r, var in enumerate(d.basic):
            if not d.is_free(var) and d.coef[r][e]:
                d.pivot(r, e)
                break

    d.add_artificial()
    restricted = [r for r, var in enumerate(d.basic) if not d.is_free(var)]
    worst = min(restricted, key=lambda r: (d.const[r], d.basic[r]), default=None)
    if worst is not None and d.const[worst] < 0:
        d.pivot(worst, d.nonbasic.index(n))

    t_id = n
    while t_id in d.basic:
        tr = d.basic.index(t_id)
        if d.const[tr] == 0:
            # degenerate: t is basic at level zero, already feasible
            break
        candidates = [
            (var, e)
            for e, var in enumerate(d.nonbasic)
            if not d.is_free(var) and d.coef[tr][e] < 0
        ]
        if not candidates:
            return None
        _, e = min(candidates)
        best = None
        for r, var in enumerate(d.basic):
            if d.is_free(var):
                continue
            a = d.coef[r][e]
            if a < 0:
                key = (d.const[r] / -a, var)
                if best is None or key < best[0]:
                    best = (key, r)
        # t's own row always qualifies, so best is never None here
        d.pivot(best[1], e)

    if t_id in d.basic and d.const[d.basic.index(t_id)] > 0:
        return None

    values = {var: d.const[r] for r, var in enumerate(d.basic)}
    return tuple(values.get(j, Fraction(0)) for j in range(n))
