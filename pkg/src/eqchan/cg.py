"""Clebsch-Gordan transform for a qubit coupled to a spin-l/2 irrep.

The transform maps ``C^2 (x) C^(l+1)`` onto ``C^l (+) C^(l+2)``; the first
``l`` output rows carry the lower irrep, the last ``l+2`` rows the upper one.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

SWAP_SIGN = np.array([[0.0, 1.0], [-1.0, 0.0]])


@dataclass(frozen=True)
class CGTransform:
    l: int
    matrix: np.ndarray
    kind: str  # "standard" or "dual"

    @property
    def low_dim(self) -> int:
        return self.l

    @property
    def high_dim(self) -> int:
        return self.l + 2

    def low_block(self, m: np.ndarray) -> np.ndarray:
        return m[: self.l, : self.l]

    def high_block(self, m: np.ndarray) -> np.ndarray:
        return m[self.l:, self.l:]


def rotation_r(l: int, k: int) -> np.ndarray:
    """Real 2x2 rotation whose entries are the coupling coefficients at level k."""
    if not 0 <= k <= l + 1:
        raise ValueError(f"k={k} outside 0..{l + 1}")
    s = 1.0 / sqrt(l + 1)
    return s * np.array([[sqrt(k), sqrt(l + 1 - k)],
                         [-sqrt(l + 1 - k), sqrt(k)]])


def _cg_matrix(l: int) -> np.ndarray:
    dim = 2 * (l + 1)
    out = np.zeros((dim, dim))
    for i in (0, 1):
        for j in range(l + 1):
            col = i * (l + 1) + j
            rot = rotation_r(l, j + i)
            low = j + i - 1
            # low == -1 and low == l have vanishing weight; skip them
            if 0 <= low < l:
                out[low, col] = rot[i, 0]
            out[l + j + i, col] = rot[i, 1]
    return out


def cg_transform(l: int) -> CGTransform:
    if l < 1:
        raise ValueError("l must be at least 1")
    return CGTransform(l, _cg_matrix(l), "standard")


def dual_cg_transform(l: int) -> CGTransform:
    """Transform that block-diagonalises ``M^{-T} (x) T^l(M)``."""
    if l < 1:
        raise ValueError("l must be at least 1")
    return CGTransform(l, _cg_matrix(l) @ np.kron(SWAP_SIGN, np.eye(l + 1)), "dual")


def cofactor_transpose(m: np.ndarray) -> np.ndarray:
    """``(M^{-1})^T`` from the closed-form 2x2 inverse."""
    (a, b), (c, d) = np.asarray(m, dtype=complex)
    det = a * d - b * c
    return np.array([[d, -c], [-b, a]]) / det
