"""Exact rational simplex (two-phase, Bland's rule).

Small dense tableau over ``Fraction``; meant for LPs with tens of rows and a
few hundred columns, where exactness matters more than speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = int | Fraction


class InfeasibleError(ValueError):
    pass


class UnboundedError(ValueError):
    pass


@dataclass
class LPResult:
    x: list[Fraction]
    value: Fraction
    basis: list[int]
    pivots: int


def _pivot(tab: list[list[Fraction]], row: int, col: int) -> None:
    piv = tab[row][col]
    prow = [v / piv for v in tab[row]]
    tab[row] = prow
    for r, line in enumerate(tab):
        if r == row:
            continue
        f = line[col]
        if f:
            tab[r] = [a - f * b for a, b in zip(line, prow)]


def _run(tab: list[list[Fraction]], basis: list[int], allowed: int) -> int:
    """Maximise the objective held in the last row (stored as -c). Returns pivot count.

    Columns >= ``allowed`` (excluding rhs) never enter.
    """
    pivots = 0
    m = len(basis)
    obj = tab[m]
    while True:
        obj = tab[m]
        # Bland: lowest-index column with negative reduced cost
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return pivots
        best = None
        for r in range(m):
            a = tab[r][col]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            raise UnboundedError("objective is unbounded")
        _pivot(tab, best[1], col)
        basis[best[1]] = col
        pivots += 1


def maximize(
    c: Sequence[Number],
    a_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
    a_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
) -> LPResult:
    """max c.x subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0, exactly."""
    nvar = len(c)
    rows: list[tuple[list[Fraction], int, Fraction]] = []  # (coeffs, slack sign, rhs)
    for a, b in zip(a_ub, b_ub):
        rows.append(([Fraction(v) for v in a], 1, Fraction(b)))
    for a, b in zip(a_eq, b_eq):
        rows.append(([Fraction(v) for v in a], 0, Fraction(b)))
    m = len(rows)
    nslack = sum(1 for _, s, _ in rows if s)
    width = nvar + nslack + m + 1  # vars | slacks | artificials | rhs

    tab: list[list[Fraction]] = []
    basis: list[int] = []
    slack_col = nvar
    for r, (coeffs, sign, rhs) in enumerate(rows):
        line = [Fraction(0)] * width
        line[:nvar] = coeffs
        if sign:
            line[slack_col] = Fraction(1)
        if rhs < 0:
            line = [-v for v in line]
            rhs = -rhs
        line[-1] = rhs
        if sign and line[slack_col] == 1:
            basis.append(slack_col)
        else:
            line[nvar + nslack + r] = Fraction(1)
            basis.append(nvar + nslack + r)
        if sign:
            slack_col += 1
        tab.append(line)

    art_start = nvar + nslack
    pivots = 0
    if any(b >= art_start for b in basis):
        # phase 1: maximise -sum(artificials)
        obj = [Fraction(0)] * width
        for r, b in enumerate(basis):
            if b >= art_start:
                obj = [o - v for o, v in zip(obj, tab[r])]
        for j in range(art_start, width - 1):
            obj[j] = Fraction(0)
        tab.append(obj)
        pivots += _run(tab, basis, width - 1)
        if tab[m][-1] != 0:
            raise InfeasibleError("constraints are infeasible")
        tab.pop()
        # drive zero-level artificials out of the basis; drop redundant rows
        r = 0
        while r < len(basis):
            if basis[r] >= art_start:
                col = next((j for j in range(art_start) if tab[r][j] != 0), None)
                if col is None:
                    del tab[r], basis[r]
                    continue
                _pivot(tab, r, col)
                basis[r] = col
                pivots += 1
            r += 1
        m = len(basis)

    obj = [Fraction(0)] * width
    for j in range(nvar):
        obj[j] = -Fraction(c[j])
    for r, b in enumerate(basis):
        if obj[b]:
            f = obj[b]
            obj = [o - f * v for o, v in zip(obj, tab[r])]
    tab.append(obj)
    pivots += _run(tab, basis, art_start)

    x = [Fraction(0)] * nvar
    for r, b in enumerate(basis):
        if b < nvar:
            x[b] = tab[r][-1]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(x=x, value=value, basis=basis, pivots=pivots)
