"""Explicit Schur basis for n qubits, weak Schur sampling and its inverse.

The basis vector ``|(lam, w, i)>`` is a fixed combination of permuted copies
of ``|s_l(w)> (x) |singlet>^(lam2)``.  The combination coefficients are fixed
once, by Gram-Schmidt at ``w = 0``, and reused for every ``w``; that reuse is
what makes ``U^(x)n`` act as ``Q_lam(U) (x) I`` on each block.

Permutations are 0-based tuples, ``pi[i]`` being the image of qubit ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial, sqrt

import numpy as np

from .config import DEFAULTS, TOL
from .numerics import matrix_to_json
from .rep2 import Partition, dicke_state, partitions

SINGLET = np.array([0.0, 1.0, -1.0, 0.0]) / sqrt(2)


def _check_perm(n: int, pi) -> tuple[int, ...]:
    pi = tuple(int(v) for v in pi)
    if sorted(pi) != list(range(n)):
        raise ValueError(f"{pi} is not a permutation of 0..{n - 1}")
    return pi


def inverse_perm(pi) -> tuple[int, ...]:
    inv = [0] * len(pi)
    for i, p in enumerate(pi):
        inv[p] = i
    return tuple(inv)


def compose(pi, sigma) -> tuple[int, ...]:
    """``(pi o sigma)(i) = pi[sigma[i]]``."""
    return tuple(pi[s] for s in sigma)


def permute_vector(n: int, pi, vec: np.ndarray) -> np.ndarray:
    """Move the qubit at position ``i`` to position ``pi[i]``."""
    pi = _check_perm(n, pi)
    t = np.asarray(vec).reshape((2,) * n)
    return np.transpose(t, inverse_perm(pi)).reshape(-1)


def permutation_matrix(n: int, pi) -> np.ndarray:
    pi = _check_perm(n, pi)
    idx = permute_vector(n, pi, np.arange(2 ** n))
    p = np.zeros((2 ** n, 2 ** n))
    # column idx[y] is sent to row y
    p[np.arange(2 ** n), idx] = 1.0
    return p


def symmetrize(n: int, rho: np.ndarray) -> np.ndarray:
    """Average of ``P rho P^dag`` over the whole symmetric group."""
    acc = np.zeros_like(rho, dtype=complex)
    for pi in permutations(range(n)):
        p = permutation_matrix(n, pi)
        acc += p @ rho @ p.T
    return acc / factorial(n)


def base_vector(p: Partition, w: int) -> np.ndarray:
    if not 0 <= w <= p.spin:
        raise ValueError(f"w={w} outside 0..{p.spin}")
    v = dicke_state(p.spin, w).real
    for _ in range(p.singlets):
        v = np.kron(v, SINGLET)
    return v


@dataclass(frozen=True)
class Block:
    partition: Partition
    offset: int

    @property
    def m(self) -> int:
        return self.partition.unitary_dim

    @property
    def d(self) -> int:
        return self.partition.perm_dim

    @property
    def size(self) -> int:
        return self.m * self.d

    def row(self, w: int, i: int) -> int:
        return self.offset + w * self.d + i


@dataclass(frozen=True)
class SchurBasis:
    n: int
    blocks: tuple[Block, ...]
    u_sch: np.ndarray  # rows are <(lam, w, i)|
    perms: dict  # partition -> selected permutations
    coeffs: dict  # partition -> d x d coefficient matrix over those permutations

    def vector(self, p: Partition, w: int, i: int) -> np.ndarray:
        return self.u_sch[self.block(p).row(w, i)].conj()

    def block(self, p: Partition) -> Block:
        for b in self.blocks:
            if b.partition == p:
                return b
        raise KeyError(p)

    def manifest(self) -> list[tuple[int, int, int, int, int]]:
        return [(b.partition.lambda1, b.partition.lambda2, b.m, b.d, b.offset) for b in self.blocks]

    def to_json(self) -> dict:
        return {"n": self.n, "manifest": [list(r) for r in self.manifest()],
                "u_sch": matrix_to_json(self.u_sch)}


def _orthonormalize(n: int, p: Partition):
    """Modified Gram-Schmidt over lexicographically ordered permuted copies."""
    target = p.perm_dim
    seed = base_vector(p, 0)
    basis: list[np.ndarray] = []
    coeff_rows: list[np.ndarray] = []
    chosen: list[tuple[int, ...]] = []
    for pi in permutations(range(n)):
        r = permute_vector(n, pi, seed)
        proj = np.zeros(target)
        for j, e in enumerate(basis):
            c = float(e @ r)
            proj[j] = c
            r = r - c * e
        norm = float(np.linalg.norm(r))
        if norm < TOL.gram_schmidt_drop:
            continue
        k = len(basis)
        row = np.zeros(target)
        row[k] = 1.0
        for j in range(k):
            row -= proj[j] * coeff_rows[j]
        coeff_rows.append(row / norm)
        basis.append(r / norm)
        chosen.append(pi)
        if len(basis) == target:
            break
    if len(basis) != target:
        raise RuntimeError(f"only found {len(basis)} of {target} vectors for {p}")
    return tuple(chosen), np.array(coeff_rows)


@lru_cache(maxsize=None)
def build_schur_basis(n: int) -> SchurBasis:
    if not 1 <= n <= DEFAULTS.max_schur_n:
        raise ValueError(f"explicit Schur basis supports 1 <= n <= {DEFAULTS.max_schur_n}")
    rows = []
    blocks = []
    perms = {}
    coeffs = {}
    offset = 0
    for p in partitions(n):
        chosen, a = _orthonormalize(n, p)
        perms[p], coeffs[p] = chosen, a
        blocks.append(Block(p, offset))
        for w in range(p.unitary_dim):
            seed = base_vector(p, w)
            copies = np.array([permute_vector(n, pi, seed) for pi in chosen])
            rows.extend(a @ copies)
        offset += p.unitary_dim * p.perm_dim
    u = np.array(rows, dtype=complex)
    u.setflags(write=False)
    return SchurBasis(n, tuple(blocks), u, perms, coeffs)


def outcome_probability(n: int, lambda2: int, h: int) -> Fraction:
    """Chance of seeing ``(n - lambda2, lambda2)`` on a weight-``h`` basis string."""
    if not 0 <= h <= n:
        raise ValueError("Hamming weight out of range")
    Partition(n - lambda2, lambda2)
    if lambda2 > min(h, n - h):
        return Fraction(0)
    below = comb(n, lambda2 - 1) if lambda2 >= 1 else 0
    return Fraction(comb(n, lambda2) - below, comb(n, h))


@dataclass(frozen=True)
class PreprocessOutcome:
    partition: Partition
    probability: float
    state: np.ndarray


def preprocess(n: int, rho: np.ndarray, drop_below: float = 0.0) -> list[PreprocessOutcome]:
    """Weak Schur sampling followed by discarding the permutation register.

    Outcomes with probability at or below ``drop_below`` are omitted.
    """
    basis = build_schur_basis(n)
    rho = np.asarray(rho, complex)
    if rho.shape != (2 ** n, 2 ** n):
        raise ValueError(f"expected a {2 ** n}-dimensional input")
    u = basis.u_sch
    rot = u @ rho @ u.conj().T
    out = []
    for b in basis.blocks:
        blk = rot[b.offset:b.offset + b.size, b.offset:b.offset + b.size]
        reduced = np.einsum("aibi->ab", blk.reshape(b.m, b.d, b.m, b.d))
        prob = float(np.trace(reduced).real)
        if prob <= drop_below:
            continue
        out.append(PreprocessOutcome(b.partition, prob, reduced / prob))
    return out


def preprocess_unnormalized(n: int, m: np.ndarray) -> list[tuple[Partition, np.ndarray]]:
    """Linear version of :func:`preprocess` for arbitrary operators."""
    basis = build_schur_basis(n)
    u = basis.u_sch
    rot = u @ np.asarray(m, complex) @ u.conj().T
    res = []
    for b in basis.blocks:
        blk = rot[b.offset:b.offset + b.size, b.offset:b.offset + b.size]
        res.append((b.partition, np.einsum("aibi->ab", blk.reshape(b.m, b.d, b.m, b.d))))
    return res


def preprocess_inverse(n: int, outcomes: list[PreprocessOutcome]) -> np.ndarray:
    """Re-attach a maximally mixed permutation register and undo the transform."""
    total = sum(o.probability for o in outcomes)
    if abs(total - 1) > 1e-10:
        raise ValueError(f"outcome probabilities sum to {total}, not 1")
    basis = build_schur_basis(n)
    big = np.zeros((2 ** n, 2 ** n), complex)
    for o in outcomes:
        b = basis.block(o.partition)
        big[b.offset:b.offset + b.size, b.offset:b.offset + b.size] = (
            o.probability * np.kron(o.state, np.eye(b.d) / b.d))
    u = basis.u_sch
    return u.conj().T @ big @ u
