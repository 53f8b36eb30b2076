"""Irreducible representations of 2x2 matrices on symmetric tensors.

Basis index ``k`` of the ``(l+1)``-dimensional irrep corresponds to the
monomial ``x^(l-k) y^k``; every module uses this ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, sqrt

import numpy as np


@dataclass(frozen=True, order=True)
class Partition:
    """Two-row Young diagram ``(lambda1, lambda2)``."""

    lambda1: int
    lambda2: int

    def __post_init__(self):
        if not (self.lambda1 >= self.lambda2 >= 0):
            raise ValueError(f"invalid two-row partition {self.lambda1, self.lambda2}")

    @property
    def n(self) -> int:
        return self.lambda1 + self.lambda2

    @property
    def spin(self) -> int:
        """Row difference; the irrep of the unitary register has dimension spin + 1."""
        return self.lambda1 - self.lambda2

    @property
    def singlets(self) -> int:
        return self.lambda2

    @property
    def unitary_dim(self) -> int:
        return self.spin + 1

    @property
    def perm_dim(self) -> int:
        # exact: comb(n, l1) * (l1 - l2 + 1) is always divisible by l1 + 1
        return comb(self.n, self.lambda1) * (self.spin + 1) // (self.lambda1 + 1)


def partitions(n: int) -> list[Partition]:
    """Two-row partitions of n, largest first row first."""
    return [Partition(n - r, r) for r in range(n // 2 + 1)]


def _mono(x: complex, p: int) -> complex:
    # 0**0 == 1 is what Python does already; spelled out for clarity
    return 1.0 if p == 0 else x ** p


def wigner_t(l: int, m: np.ndarray) -> np.ndarray:
    """Matrix of ``m`` acting on degree-``l`` homogeneous polynomials."""
    if l < 0:
        raise ValueError("l must be non-negative")
    (a, b), (c, d) = np.asarray(m, dtype=complex)
    out = np.zeros((l + 1, l + 1), complex)
    for j in range(l + 1):
        for k in range(l + 1):
            pref = sqrt(factorial(j) * factorial(l - j) * factorial(k) * factorial(l - k))
            acc = 0j
            for r in range(max(l - j - k, 0), min(l - j, l - k) + 1):
                den = factorial(r) * factorial(l - j - r) * factorial(l - k - r) * factorial(j + k + r - l)
                acc += (_mono(a, r) * _mono(b, l - j - r) * _mono(c, l - k - r)
                        * _mono(d, j + k + r - l)) / den
            out[j, k] = pref * acc
    return out


def q_lambda(p: Partition, m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    return np.linalg.det(m) ** p.lambda2 * wigner_t(p.spin, m)


@lru_cache(maxsize=None)
def _dicke(l: int, w: int) -> np.ndarray:
    v = np.zeros(2 ** l, complex)
    for ones in combinations(range(l), w):
        v[sum(1 << (l - 1 - q) for q in ones)] = 1.0
    v /= sqrt(comb(l, w))
    v.setflags(write=False)
    return v


def dicke_state(l: int, w: int) -> np.ndarray:
    """Uniform superposition of the ``l``-bit strings of weight ``w``."""
    if not 0 <= w <= l:
        raise ValueError(f"weight {w} out of range for {l} qubits")
    return _dicke(l, w).copy()


def sym_isometry(l: int) -> np.ndarray:
    """Columns are the Dicke states, embedding the irrep into ``l`` qubits."""
    return np.stack([_dicke(l, k) for k in range(l + 1)], axis=1)


def coherent_state(l: int, psi: np.ndarray) -> np.ndarray:
    a, c = np.asarray(psi, dtype=complex).reshape(2)
    return np.array([sqrt(comb(l, k)) * _mono(a, l - k) * _mono(c, k) for k in range(l + 1)])


def sym_projector(l: int) -> np.ndarray:
    v = sym_isometry(l)
    return v @ v.conj().T
