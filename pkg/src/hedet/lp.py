"""Exact rational simplex for packing LPs.

    maximize   c . y
    subject to A y <= b,  y >= 0,  with b >= 0

The all-slack basis is feasible, so no phase one is needed.  Pivoting uses
Bland's rule, which cannot cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    primal: tuple[Fraction, ...]  # y, one entry per column of A
    dual: tuple[Fraction, ...]    # x, one entry per row of A
    pivots: int


def solve_packing(A, b, c) -> LPSolution:
    m = len(A)
    n = len(c)
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be non-negative")
    width = n + m
    T = []
    for i, row in enumerate(A):
        if len(row) != n:
            raise ValueError("constraint rows must match the objective length")
        r = [Fraction(v) for v in row] + [Fraction(0)] * m + [b[i]]
        r[n + i] = Fraction(1)
        T.append(r)
    # reduced costs c_j - z_j; optimal once none is positive
    red = [Fraction(v) for v in c] + [Fraction(0)] * m
    obj = Fraction(0)
    basis = [n + i for i in range(m)]
    pivots = 0
    while True:
        enter = next((j for j in range(width) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded("objective is unbounded")
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            T[leave] = prow
        nz = [j for j in range(width + 1) if prow[j]]
        for i in range(m):
            if i == leave:
                continue
            f = T[i][enter]
            if f:
                row = T[i]
                for j in nz:
                    row[j] -= f * prow[j]
        f = red[enter]
        for j in nz:
            if j < width:
                red[j] -= f * prow[j]
        obj += f * prow[width]
        basis[leave] = enter
        pivots += 1
    y = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            y[var] = T[i][width]
    x = [-red[n + i] for i in range(m)]
    return LPSolution(obj, tuple(y), tuple(x), pivots)
