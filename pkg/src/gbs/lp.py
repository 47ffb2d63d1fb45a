"""Exact rational feasibility: Fourier-Motzkin elimination and a Phase I simplex.

Both work on :class:`fractions.Fraction` and return an explicit solution, so
callers can re-check it with plain inner products.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor
from typing import Sequence

Row = tuple[tuple[Fraction, ...], Fraction]


def _normalize(coeffs: Sequence[Fraction], rhs: Fraction) -> Row:
    """Scale ``coeffs . x >= rhs`` so its first nonzero coefficient is +-1."""
    lead = next((abs(c) for c in coeffs if c), None)
    if lead is None:
        return tuple(coeffs), rhs
    return tuple(c / lead for c in coeffs), rhs / lead


def _eliminate(rows: list[Row], k: int) -> list[Row]:
    pos = [r for r in rows if r[0][k] > 0]
    neg = [r for r in rows if r[0][k] < 0]
    out = {r for r in rows if r[0][k] == 0}
    for cp, bp in pos:
        for cn, bn in neg:
            sp, sn = -cn[k], cp[k]
            coeffs = tuple(sp * x + sn * y for x, y in zip(cp, cn))
            out.add(_normalize(coeffs, sp * bp + sn * bn))
    return sorted(out)


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    """A value in [lo, hi]: the integer nearest 0 if there is one."""
    lo_i = None if lo is None else ceil(lo)
    hi_i = None if hi is None else floor(hi)
    if lo_i is None or hi_i is None or lo_i <= hi_i:
        cand = 0
        if lo_i is not None:
            cand = max(cand, lo_i)
        if hi_i is not None:
            cand = min(cand, hi_i)
        return Fraction(cand)
    return lo


def fourier_motzkin(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A point x with ``A x >= b``, or None if the system is infeasible."""
    if not A:
        return []
    d = len(A[0])
    rows = sorted({_normalize([Fraction(x) for x in row], Fraction(bi)) for row, bi in zip(A, b)})
    stages = [rows]
    for k in range(d - 1, -1, -1):
        rows = _eliminate(rows, k)
        stages.append(rows)
    if any(rhs > 0 for _, rhs in rows):
        return None
    x = [Fraction(0)] * d
    # stages[d - 1 - k] only involves variables 0..k
    for k in range(d):
        lo = hi = None
        for coeffs, rhs in stages[d - 1 - k]:
            c = coeffs[k]
            if not c:
                continue
            rest = rhs - sum(coeffs[j] * x[j] for j in range(k))
            bound = rest / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        x[k] = _pick(lo, hi)
    return x


def simplex_feasible(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A point x >= 0 with ``A x = b`` (Phase I, Bland's rule), or None."""
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    rows = []
    for row, bi in zip(A, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row, bi = [-x for x in row], -bi
        rows.append(row + [Fraction(int(i == len(rows))) for i in range(m)] + [bi])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials, stored as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        ratios = [
            (row[width] / row[enter], basis[i], i)
            for i, row in enumerate(rows) if row[enter] > 0
        ]
        if not ratios:
            break  # cannot happen for Phase I (objective bounded below by 0)
        _, _, leave = min(ratios)
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i, row in enumerate(rows):
            if i != leave and row[enter]:
                f = row[enter]
                rows[i] = [x - f * y for x, y in zip(row, rows[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, rows[leave])]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
    return x
