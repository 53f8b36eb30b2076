"""Optimal worst-case fidelity for symmetric self-dual Boolean functions.

A function on an odd number ``n`` of bits is stored by its values on Hamming
weights ``0..n//2``; the rest follow from ``f(n - h) = 1 - f(h)``.  The
achievable per-weight fidelities are affine in the mixing weights ``t_k`` of
the template channel, so the best worst case is a small linear program that
is solved here in exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .simplex import maximize


@dataclass(frozen=True)
class BoolFn:
    n: int
    half_table: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise ValueError("n must be a positive odd integer")
        if len(self.half_table) != self.n // 2 + 1:
            raise ValueError(f"half table needs {self.n // 2 + 1} entries")
        if any(v not in (0, 1) for v in self.half_table):
            raise ValueError("half table entries must be bits")

    @classmethod
    def from_string(cls, bits: str) -> "BoolFn":
        if not bits or any(ch not in "01" for ch in bits):
            raise ValueError(f"not a binary truth table: {bits!r}")
        return cls(2 * len(bits) - 1, tuple(int(ch) for ch in bits))

    @classmethod
    def majority(cls, n: int) -> "BoolFn":
        return cls(n, (0,) * (n // 2 + 1))

    @classmethod
    def parity(cls, n: int) -> "BoolFn":
        return cls(n, tuple(h % 2 for h in range(n // 2 + 1)))

    @property
    def half(self) -> int:
        return self.n // 2

    def table(self) -> str:
        return "".join(str(v) for v in self.half_table)

    def at_weight(self, h: int) -> int:
        if not 0 <= h <= self.n:
            raise ValueError("weight out of range")
        return self.half_table[h] if h <= self.half else 1 - self.half_table[self.n - h]

    def __call__(self, bits: Sequence[int]) -> int:
        return self.at_weight(sum(bits))


def all_functions(n: int) -> list[BoolFn]:
    width = n // 2 + 1
    return [BoolFn(n, tuple(int(ch) for ch in format(i, f"0{width}b"))) for i in range(2 ** width)]


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def outcome_weight(n: int, k: int, h: int) -> Fraction:
    return Fraction(_binom(n, k) - _binom(n, k - 1), _binom(n, h))


def _tr_value(n: int, fh: int, k: int, h: int) -> Fraction:
    return Fraction(n - h - k - fh * (n - 2 * h), n - 2 * k)


def _unot_value(n: int, fh: int, k: int, h: int) -> Fraction:
    return Fraction(h - k + 1 + fh * (n - 2 * h), n - 2 * k + 2)


@dataclass(frozen=True)
class LPCoefficients:
    n: int
    p: dict
    a: dict
    b: dict


def lp_coefficients(n: int, f: BoolFn) -> LPCoefficients:
    """Tables keyed by ``(k, h)`` for ``0 <= k <= h <= n//2``."""
    if f.n != n:
        raise ValueError("function arity does not match n")
    p, a, b = {}, {}, {}
    for h in range(n // 2 + 1):
        fh = f.half_table[h]
        for k in range(h + 1):
            p[k, h] = outcome_weight(n, k, h)
            a[k, h] = _tr_value(n, fh, k, h)
            b[k, h] = _unot_value(n, fh, k, h)
    return LPCoefficients(n, p, a, b)


def coefficient(table: dict, k: int, h: int) -> Fraction:
    try:
        return table[k, h]
    except KeyError:
        raise IndexError(f"(k={k}, h={h}) outside 0 <= k <= h") from None


def per_weight_fidelity(n: int, f: BoolFn, t: Sequence, weights: Iterable[int] | None = None) -> tuple[Fraction, ...]:
    """Exact fidelity on each input weight for mixing weights ``t``.

    Entries of ``t`` outside ``[0, 1]`` are allowed; they describe linear maps
    that need not be physical.

    Both channel values are affine in ``k`` over a k-only denominator, so the
    double sum collapses onto four running prefix sums.
    """
    t = [Fraction(v) for v in t]
    half = n // 2
    if len(t) != half + 1:
        raise ValueError(f"t needs {half + 1} entries")
    tr0 = tr1 = un0 = un1 = Fraction(0)
    out = []
    for h in range(half + 1):
        k = h
        w = _binom(n, k) - _binom(n, k - 1)
        tr_part = t[k] * Fraction(w, n - 2 * k)
        un_part = (1 - t[k]) * Fraction(w, n - 2 * k + 2)
        tr0 += tr_part
        tr1 += k * tr_part
        un0 += un_part
        un1 += k * un_part
        fh = f.half_table[h]
        tr_const = n - h - fh * (n - 2 * h)
        un_const = h + 1 + fh * (n - 2 * h)
        out.append((tr_const * tr0 - tr1 + un_const * un0 - un1) / _binom(n, h))
    if weights is None:
        return tuple(out)
    return tuple(out[h] for h in weights)


@dataclass(frozen=True)
class LPSolution:
    fidelity: Fraction
    t: tuple[Fraction, ...]
    per_weight: tuple[Fraction, ...]
    weight_set: tuple[int, ...]


def _slope_sign(n: int, fh: int, k: int, h: int) -> int:
    # sign of a_k(h) - b_k(h) without building big rationals
    num = (n - h - k - fh * (n - 2 * h)) * (n - 2 * k + 2) - (h - k + 1 + fh * (n - 2 * h)) * (n - 2 * k)
    return (num > 0) - (num < 0)


def solve_lp(n: int, f: BoolFn, weight_set: Iterable[int] | None = None) -> LPSolution:
    """Maximise the worst per-weight fidelity over ``t`` in ``[0, 1]^(n//2+1)``.

    Variables whose coefficient has the same sign in every active constraint
    are fixed at the matching bound first (raising such a ``t_k`` can only help
    or only hurt every constraint); the remaining ones go to the simplex.
    """
    if f.n != n:
        raise ValueError("function arity does not match n")
    half = n // 2
    ws = tuple(sorted(set(range(half + 1) if weight_set is None else weight_set)))
    if not ws or ws[0] < 0 or ws[-1] > half:
        raise ValueError(f"weight set must be a non-empty subset of 0..{half}")

    fixed: dict[int, Fraction] = {}
    for k in range(half + 1):
        signs = {_slope_sign(n, f.half_table[h], k, h) for h in ws if h >= k}
        if signs <= {0, 1}:
            fixed[k] = Fraction(1)
        elif signs <= {0, -1}:
            fixed[k] = Fraction(0)
    free = [k for k in range(half + 1) if k not in fixed]

    if free:
        # variables: c, then t_k for free k
        rows, rhs = [], []
        for h in ws:
            fh = f.half_table[h]
            row = [Fraction(1)] + [Fraction(0)] * len(free)
            const = Fraction(0)
            for k in range(h + 1):
                w = outcome_weight(n, k, h)
                tr, un = _tr_value(n, fh, k, h), _unot_value(n, fh, k, h)
                if k in fixed:
                    const += w * (un + fixed[k] * (tr - un))
                else:
                    const += w * un
                    row[1 + free.index(k)] = -w * (tr - un)
            rows.append(row)
            rhs.append(const)
        for j in range(len(free)):
            row = [Fraction(0)] * (1 + len(free))
            row[1 + j] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(1))
        res = maximize([1] + [0] * len(free), rows, rhs)
        for j, k in enumerate(free):
            fixed[k] = res.x[1 + j]
    t = tuple(fixed[k] for k in range(half + 1))
    per_weight = per_weight_fidelity(n, f, t)
    value = min(per_weight[h] for h in ws)
    if free and value != res.objective:
        raise RuntimeError("simplex objective disagrees with re-substituted constraints")
    return LPSolution(value, t, per_weight, ws)


# ------------------------------------------------------------- closed forms

def majority_fidelity_direct(n: int, h: int) -> Fraction:
    if n % 2 == 0 or not 0 <= h <= (n - 1) // 2:
        raise ValueError("need odd n and 0 <= h <= (n-1)/2")
    total = Fraction(0)
    for k in range(h + 1):
        total += Fraction((_binom(n, k) - _binom(n, k - 1)) * (n - h - k), n - 2 * k)
    return total / _binom(n, h)


def recurrence_coefficients(n: int, h: int) -> tuple[Fraction, Fraction]:
    den = (n - 2 * h + 2) * (n - h + 1)
    return (Fraction((n - 2 * h) * h, den),
            Fraction(4 * h * h - (4 * n + 5) * h + (n + 1) * (n + 2), den))


def majority_recurrence_step(n: int, h: int, prev: Fraction) -> Fraction:
    """Majority fidelity at weight h from its value at weight h - 1."""
    if not 1 <= h <= (n - 1) // 2:
        raise ValueError("need 1 <= h <= (n-1)/2")
    slope, shift = recurrence_coefficients(n, h)
    return slope * prev + shift


def majority_fidelity_chain(n: int) -> list[Fraction]:
    vals = [Fraction(1)]
    for h in range(1, (n - 1) // 2 + 1):
        vals.append(majority_recurrence_step(n, h, vals[-1]))
    return vals


def majority_fidelity_recursive(n: int) -> Fraction:
    """Optimal majority fidelity via a three-term recursion in (n + 1) / 2."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    target = (n + 1) // 2
    g = [None, Fraction(1), Fraction(8, 9)]
    for m in range(3, target + 1):
        pre = Fraction(2 * m, (2 * m - 1) ** 2 * (2 * m + 1))
        g.append(pre * ((2 * m * (4 * m - 7) + 5) * g[m - 1] - 4 * (m - 1) * (m - 2) * g[m - 2] + 1))
    return g[target]


def parity_conjecture(n: int) -> Fraction:
    if n % 2 == 0:
        raise ValueError("n must be odd")
    return Fraction(2 * (-(-(n + 1) // 4)) + 1, n + 2)


def trivial_strategy_fidelity(n: int, promise: bool) -> Fraction:
    """Fidelity of outputting a uniformly random input qubit."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    return Fraction(5, 6) if promise else Fraction(1, 2) + Fraction(1, 2 * n)


def promise_weights(n: int, divisor: int = 6) -> tuple[int, ...]:
    return tuple(range(n // divisor + 1))


def solution_csv_row(f: BoolFn, sol: LPSolution) -> list[str]:
    return [f.table(), f"{sol.fidelity.numerator}/{sol.fidelity.denominator}",
            f"{float(sol.fidelity):.6f}", " ".join(str(v) for v in sol.t),
            " ".join(str(v) for v in sol.per_weight)]
