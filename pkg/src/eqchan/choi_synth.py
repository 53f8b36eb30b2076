"""Exact Choi matrices of optimal channels and of ideal equivariant extensions.

The unknown Choi matrix ``J`` (output qubit first) must send every product
input ``rho(s, r) = (x)_i rho((-1)^{s_i} r)`` to ``rho(q_s r)`` for all Bloch
vectors ``r``, with shrink factor ``q_s = (2 c_s - 1)(-1)^{f(s)}``.  Both sides
are polynomials in the Bloch coordinates; matching them on the sphere gives a
linear system for ``J``.

Polynomials use ``u = x + iy``, ``v = x - iy`` and ``z``.  In these
coordinates every density-matrix entry has rational coefficients, and the
sphere relation reads ``z^2 = 1 - u v``, so monomials are reduced to
z-degree at most one.  Invariance under adjacent qubit swaps is imposed by
merging the Choi entries it identifies (union-find), which leaves one
unknown per orbit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .channels import apply_mixture
from .config import DEFAULTS
from .fidopt import BoolFn
from .numerics import check_cptp, qzeros, rationalize
from .schur import preprocess_unnormalized

Poly = dict  # (deg_u, deg_v, deg_z) -> Fraction


class SingularSystemError(RuntimeError):
    pass


class RationalizationError(ValueError):
    pass


# ------------------------------------------------------------- polynomials

def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a1, b1, c1), x in p.items():
        for (a2, b2, c2), y in q.items():
            key = (a1 + a2, b1 + b2, c1 + c2)
            out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


def reduce_sphere(p: Poly) -> Poly:
    """Rewrite ``z^2 -> 1 - u v`` until every monomial has z-degree <= 1."""
    out: Poly = {}
    stack = list(p.items())
    while stack:
        (a, b, c), x = stack.pop()
        if c < 2:
            out[a, b, c] = out.get((a, b, c), 0) + x
        else:
            stack.append(((a, b, c - 2), x))
            stack.append(((a + 1, b + 1, c - 2), -x))
    return {k: v for k, v in out.items() if v != 0}


_HALF = Fraction(1, 2)


def bloch_entry(i: int, j: int, sign: int) -> Poly:
    """Entry (i, j) of ``rho(sign * r)`` as a polynomial."""
    s = Fraction(sign)
    if (i, j) == (0, 0):
        return {(0, 0, 0): _HALF, (0, 0, 1): _HALF * s}
    if (i, j) == (1, 1):
        return {(0, 0, 0): _HALF, (0, 0, 1): -_HALF * s}
    if (i, j) == (0, 1):
        return {(0, 1, 0): _HALF * s}
    return {(1, 0, 0): _HALF * s}


def product_entry(a: Sequence[int], b: Sequence[int], signs: Sequence[int]) -> Poly:
    p: Poly = {(0, 0, 0): Fraction(1)}
    for ai, bi, si in zip(a, b, signs):
        p = _poly_mul(p, bloch_entry(ai, bi, si))
    return p


# -------------------------------------------------------------- orbits

def _bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (n - 1 - q)) & 1 for q in range(n))


def _swap(x: int, n: int, i: int) -> int:
    """Exchange qubits i and i+1 of a basis index."""
    hi, lo = n - 1 - i, n - 2 - i
    bi, bj = (x >> hi) & 1, (x >> lo) & 1
    if bi == bj:
        return x
    return x ^ ((1 << hi) | (1 << lo))


def swap_orbits(n: int) -> tuple[list[int], int]:
    """Label each input pair ``(a, b)`` by its orbit under adjacent swaps."""
    size = 2 ** n
    parent = list(range(size * size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(size):
        for b in range(size):
            for i in range(n - 1):
                ra, rb = find(a * size + b), find(_swap(a, n, i) * size + _swap(b, n, i))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    roots: dict[int, int] = {}
    labels = []
    for x in range(size * size):
        labels.append(roots.setdefault(find(x), len(roots)))
    return labels, len(roots)


# ------------------------------------------------------------- linear algebra

def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Unique solution of an overdetermined consistent system, by Gauss-Jordan."""
    nvar = len(rows[0]) if rows else 0
    aug = [list(r) + [y] for r, y in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(nvar):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        nz = [j for j, v in enumerate(aug[r]) if v != 0]
        for i in range(len(aug)):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                row = aug[i]
                for j in nz:
                    row[j] -= f * aug[r][j]
        pivots.append(col)
        r += 1
    if any(row[-1] != 0 for row in aug[r:]):
        raise SingularSystemError("linear system is inconsistent")
    if r < nvar:
        raise SingularSystemError(f"linear system has rank {r} < {nvar} unknowns")
    sol = [Fraction(0)] * nvar
    for i, col in enumerate(pivots):
        sol[col] = aug[i][-1]
    return sol


# --------------------------------------------------------------- synthesis

@dataclass(frozen=True)
class ChoiResult:
    matrix: np.ndarray
    is_cp: bool
    fidelities: tuple[Fraction, ...]


def representative(n: int, h: int) -> tuple[int, ...]:
    return (0,) * (n - h) + (1,) * h


def synthesize_choi(n: int, f: BoolFn, c: Sequence) -> ChoiResult:
    """Permutation-invariant, unitary-equivariant ``J`` with fidelity ``c[h]`` on weight ``h``."""
    if f.n != n:
        raise ValueError("function arity does not match n")
    if n > DEFAULTS.max_choi_n:
        raise ValueError(f"Choi synthesis supports n <= {DEFAULTS.max_choi_n}")
    c = tuple(Fraction(v) for v in c)
    if len(c) != n // 2 + 1:
        raise ValueError(f"need {n // 2 + 1} fidelities")
    size = 2 ** n
    labels, n_orbits = swap_orbits(n)
    bits = [_bits(x, n) for x in range(size)]

    # polynomial coefficient of each orbit unknown, per representative input
    orbit_polys = []
    for h in range(n // 2 + 1):
        signs = [(-1) ** s for s in representative(n, h)]
        polys: list[Poly] = [{} for _ in range(n_orbits)]
        for a in range(size):
            for b in range(size):
                acc = polys[labels[a * size + b]]
                for key, val in product_entry(bits[a], bits[b], signs).items():
                    acc[key] = acc.get(key, 0) + val
        orbit_polys.append([reduce_sphere(p) for p in polys])

    j = qzeros(2 * size, 2 * size)
    for o1, o2 in product((0, 1), repeat=2):
        rows, rhs = [], []
        for h in range(n // 2 + 1):
            shrink = (2 * c[h] - 1) * (-1) ** f.half_table[h]
            target = bloch_entry(o1, o2, 1)
            target = {k: (v if k == (0, 0, 0) else v * shrink) for k, v in target.items()}
            polys = orbit_polys[h]
            monos = set(target)
            for p in polys:
                monos.update(p)
            for mono in sorted(monos):
                rows.append([p.get(mono, Fraction(0)) for p in polys])
                rhs.append(Fraction(target.get(mono, 0)))
        sol = solve_exact(rows, rhs)
        for a in range(size):
            for b in range(size):
                j[o1 * size + a, o2 * size + b] = sol[labels[a * size + b]]
    return ChoiResult(j, check_cptp(j, 2, size).is_cp, c)


def ideal_choi(n: int, f: BoolFn) -> ChoiResult:
    return synthesize_choi(n, f, [1] * (n // 2 + 1))


# ------------------------------------------------- template reconstruction

def template_choi_float(n: int, t: Sequence) -> np.ndarray:
    """Choi matrix of the template channel built from the explicit Schur basis."""
    size = 2 ** n
    weights = [float(v) for v in t]
    j = np.zeros((2 * size, 2 * size), complex)
    for a in range(size):
        for b in range(size):
            unit = np.zeros((size, size), complex)
            unit[a, b] = 1.0
            out = np.zeros((2, 2), complex)
            for part, blk in preprocess_unnormalized(n, unit):
                out += apply_mixture(part.spin, weights[part.lambda2], blk)
            j[a::size, b::size] = out
    return j


def assemble_choi_from_template(n: int, f: BoolFn, t: Sequence, verify: bool = True) -> np.ndarray:
    """Exact Choi matrix of the template channel with mixing weights ``t``.

    The float reconstruction is snapped to rationals; with ``verify`` the result
    must coincide with :func:`synthesize_choi` at the fidelities ``t`` attains.
    """
    from .fidopt import per_weight_fidelity

    if n > DEFAULTS.max_choi_n:
        raise ValueError(f"template assembly supports n <= {DEFAULTS.max_choi_n}")
    try:
        exact = rationalize(template_choi_float(n, t))
    except ValueError as err:
        raise RationalizationError(str(err)) from err
    if verify:
        ref = synthesize_choi(n, f, per_weight_fidelity(n, f, t)).matrix
        if not np.array_equal(exact, ref):
            raise RationalizationError("template Choi matrix disagrees with the synthesised one")
    return exact


def conjectured_ideal_t(n: int, f: BoolFn, k: int) -> Fraction:
    """Closed-form guess for mixing weights whose linear map has fidelity one."""
    if not 0 <= k <= n // 2:
        raise ValueError("k out of range")
    gap = n - 2 * k
    val = Fraction(gap, 2 * (gap + 1))
    if k > 0:
        val -= Fraction(k * gap, 2 * (gap + 1) ** 2) * (-1) ** f.half_table[k - 1]
    val += Fraction((n - k + 1) * (gap + 2), 2 * (gap + 1) ** 2) * (-1) ** f.half_table[k]
    return val
