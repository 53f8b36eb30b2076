"""Dense-tableau simplex method over exact rationals.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0`` so that the slack
basis is feasible from the start.  Bland's rule picks both the entering and
the leaving variable, which rules out cycling on degenerate vertices.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class UnboundedError(RuntimeError):
    pass


@dataclass(frozen=True)
class SimplexResult:
    x: tuple[Fraction, ...]
    objective: Fraction
    pivots: int


def maximize(c: Sequence, a: Sequence[Sequence], b: Sequence, max_pivots: int = 100_000) -> SimplexResult:
    m = len(a)
    nvar = len(c)
    if any(Fraction(v) < 0 for v in b):
        raise ValueError("right-hand side must be non-negative (origin must be feasible)")
    # rows: [A | I | b]; objective row holds reduced costs
    width = nvar + m
    rows = []
    for i, ai in enumerate(a):
        if len(ai) != nvar:
            raise ValueError("constraint row has the wrong length")
        row = [Fraction(v) for v in ai] + [Fraction(0)] * m + [Fraction(b[i])]
        row[nvar + i] = Fraction(1)
        rows.append(row)
    obj = [-Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = [nvar + i for i in range(m)]

    pivots = 0
    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        leave = None
        for i in range(m):
            coef = rows[i][entering]
            if coef > 0:
                ratio = rows[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise UnboundedError("objective is unbounded")
        piv_row = rows[leave]
        piv = piv_row[entering]
        if piv != 1:
            piv_row = [v / piv for v in piv_row]
            rows[leave] = piv_row
        nz = [j for j, v in enumerate(piv_row) if v != 0]
        for i in range(m):
            if i != leave:
                f = rows[i][entering]
                if f != 0:
                    r = rows[i]
                    for j in nz:
                        r[j] -= f * piv_row[j]
        f = obj[entering]
        for j in nz:
            obj[j] -= f * piv_row[j]
        basis[leave] = entering
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("pivot limit exceeded")

    x = [Fraction(0)] * nvar
    for i, var in enumerate(basis):
        if var < nvar:
            x[var] = rows[i][-1]
    return SimplexResult(tuple(x), obj[-1], pivots)
