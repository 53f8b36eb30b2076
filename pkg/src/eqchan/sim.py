"""Density-matrix execution of the template channel and empirical checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channels import apply_extremal, circuit_apply, extremal_circuit
from .config import DEFAULTS
from .fidopt import BoolFn
from .numerics import fidelity, ket
from .schur import permutation_matrix, preprocess


def haar_unitary(rng: np.random.Generator, d: int = 2) -> np.ndarray:
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def tensor_power(m: np.ndarray, n: int) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for _ in range(n):
        out = np.kron(out, m)
    return out


def basis_projector(bits: Sequence[int]) -> np.ndarray:
    idx = int("".join(str(b) for b in bits), 2) if bits else 0
    v = ket(idx, 2 ** len(bits))
    return np.outer(v, v.conj())


def weight_input(n: int, h: int) -> tuple[int, ...]:
    return (0,) * (n - h) + (1,) * h


def run_template(n: int, t: Sequence, rho: np.ndarray, use_circuits: bool = False) -> np.ndarray:
    """Weak Schur sampling, then a ``t``-weighted mix of the two extremal channels."""
    if n > DEFAULTS.max_schur_n:
        raise ValueError(f"simulation supports n <= {DEFAULTS.max_schur_n}")
    weights = [float(v) for v in t]
    if len(weights) != n // 2 + 1:
        raise ValueError(f"t needs {n // 2 + 1} entries")
    out = np.zeros((2, 2), complex)
    for o in preprocess(n, rho):
        l = o.partition.spin
        if l == 0:
            raise AssertionError("spin-zero block cannot occur for odd n")
        wt = weights[o.partition.lambda2]
        if use_circuits:
            tr = circuit_apply(extremal_circuit(l, "tr"), o.state)
            un = circuit_apply(extremal_circuit(l, "unot"), o.state)
        else:
            tr = apply_extremal(l, "tr", o.state)
            un = apply_extremal(l, "unot", o.state)
        out += o.probability * (wt * tr + (1 - wt) * un)
    return out


@dataclass(frozen=True)
class TemplateRun:
    n: int
    t: tuple[float, ...]
    per_weight: tuple[float, ...]

    @property
    def worst_case(self) -> float:
        return min(self.per_weight)


def simulate_weights(n: int, f: BoolFn, t: Sequence) -> TemplateRun:
    vals = []
    for h in range(n // 2 + 1):
        out = run_template(n, t, basis_projector(weight_input(n, h)))
        vals.append(fidelity(ket(f.half_table[h], 2), out))
    return TemplateRun(n, tuple(float(v) for v in t), tuple(vals))


def worst_case_fidelity_sim(n: int, f: BoolFn, t: Sequence) -> float:
    return simulate_weights(n, f, t).worst_case


def equivariance_check(n: int, t: Sequence, trials: int, seed: int = DEFAULTS.seed) -> float:
    """Largest deviation from permutation invariance plus unitary equivariance."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        u = haar_unitary(rng)
        bits = tuple(int(b) for b in rng.integers(0, 2, size=n))
        pi = rng.permutation(n)
        base = basis_projector(bits)
        p = permutation_matrix(n, pi)
        un = tensor_power(u, n)
        moved = un @ p @ base @ p.T @ un.conj().T
        lhs = run_template(n, t, moved)
        rhs = u @ run_template(n, t, base) @ u.conj().T
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def per_unitary_fidelities(n: int, f: BoolFn, t: Sequence, h: int, samples: int,
                           seed: int = DEFAULTS.seed) -> np.ndarray:
    """Output fidelity on ``U^(x)n |0..01..1>`` for independent Haar-random ``U``."""
    rng = np.random.default_rng(seed)
    base = basis_projector(weight_input(n, h))
    target = ket(f.half_table[h], 2)
    vals = []
    for _ in range(samples):
        u = haar_unitary(rng)
        un = tensor_power(u, n)
        out = run_template(n, t, un @ base @ un.conj().T)
        vals.append(fidelity(u @ target, out))
    return np.array(vals)


def haar_average_fidelity(n: int, f: BoolFn, t: Sequence, samples: int,
                          seed: int = DEFAULTS.seed) -> tuple[float, float]:
    """Mean fidelity over Haar-random bases and uniformly chosen weights, with its standard error."""
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    vals = []
    for _ in range(samples):
        h = int(rng.integers(0, n // 2 + 1))
        u = haar_unitary(rng)
        un = tensor_power(u, n)
        out = run_template(n, t, un @ basis_projector(weight_input(n, h)) @ un.conj().T)
        vals.append(fidelity(u @ ket(f.half_table[h], 2), out))
    vals = np.array(vals)
    err = float(vals.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return float(vals.mean()), err


def comparison_rows(f: BoolFn, t: Sequence, exact: Sequence) -> list[list[str]]:
    run = simulate_weights(f.n, f, t)
    return [[f.table(), str(h), f"{s:.12f}", f"{float(e):.12f}", f"{abs(s - float(e)):.3e}"]
            for h, (s, e) in enumerate(zip(run.per_weight, exact))]
