"""Dense linear algebra on two tracks: complex floats and exact rationals.

Complex matrices are plain ``numpy`` arrays of ``complex128``.  Exact matrices
are ``numpy`` object arrays holding :class:`fractions.Fraction` entries, so the
usual ``+``, ``*`` and ``@`` operators stay exact.

Choi matrices follow the output-first convention
``J = sum_ij Phi(|i><j|) (x) |i><j|``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .config import TOL

Rational = Fraction


# ---------------------------------------------------------------- exact track

def qmatrix(rows: Iterable[Iterable]) -> np.ndarray:
    """Build an exact matrix from nested rows of ints, Fractions or "p/q" strings."""
    data = [[Fraction(v) for v in row] for row in rows]
    out = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        if len(row) != out.shape[1]:
            raise ValueError("ragged rows")
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def qzeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def qidentity(d: int) -> np.ndarray:
    out = qzeros(d, d)
    for i in range(d):
        out[i, i] = Fraction(1)
    return out


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def to_complex(m: np.ndarray) -> np.ndarray:
    """Float view of an exact (or already complex) matrix."""
    if is_exact(m):
        return np.vectorize(lambda v: complex(v), otypes=[complex])(m)
    return np.asarray(m, dtype=complex)


def rationalize(m: np.ndarray, max_den: int = TOL.rational_max_den,
                fit: float = TOL.rational_fit) -> np.ndarray:
    """Snap a real-valued float matrix to nearby small-denominator rationals.

    Raises ValueError if an entry has a non-negligible imaginary part or does
    not sit within ``fit`` of a rational with denominator at most ``max_den``.
    """
    m = np.asarray(m, dtype=complex)
    if np.max(np.abs(m.imag), initial=0.0) > fit:
        raise ValueError("matrix has a non-negligible imaginary part")
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m.real):
        q = Fraction(float(v)).limit_denominator(max_den)
        if abs(float(q) - v) > fit:
            raise ValueError(f"entry {idx}={v!r} is not near a small rational")
        out[idx] = q
    return out


# -------------------------------------------------------------- shared ops

def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; works for both float and exact matrices."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    return np.kron(a, b)


def _check_square(m: np.ndarray, dim: int, what: str) -> None:
    if m.ndim != 2 or m.shape != (dim, dim):
        raise ValueError(f"{what}: expected {dim}x{dim}, got {m.shape}")


def partial_trace(m: np.ndarray, dims: Sequence[int], which: str) -> np.ndarray:
    """Trace out the ``first`` or ``second`` factor of a bipartite operator."""
    d1, d2 = dims
    _check_square(m, d1 * d2, "partial_trace")
    t = m.reshape(d1, d2, d1, d2)
    if which == "first":
        out = sum(t[i, :, i, :] for i in range(d1))
    elif which == "second":
        out = sum(t[:, j, :, j] for j in range(d2))
    else:
        raise ValueError(f"which must be 'first' or 'second', got {which!r}")
    return np.array(out, dtype=m.dtype)


def choi_apply(j: np.ndarray, rho: np.ndarray, d_out: int, d_in: int) -> np.ndarray:
    """Channel output ``Tr_2[J (I (x) rho^T)]``."""
    _check_square(j, d_out * d_in, "choi_apply J")
    _check_square(rho, d_in, "choi_apply rho")
    if is_exact(j) and is_exact(rho):
        t = j.reshape(d_out, d_in, d_out, d_in)
        out = qzeros(d_out, d_out)
        for a in range(d_in):
            for b in range(d_in):
                if rho[a, b] != 0:
                    out = out + t[:, a, :, b] * rho[a, b]
        return out
    t = to_complex(j).reshape(d_out, d_in, d_out, d_in)
    return np.einsum("iajb,ab->ij", t, to_complex(rho))


def choi_from_kraus(kraus: Sequence[np.ndarray]) -> np.ndarray:
    """``sum_K |K>><<K|`` with row-major vectorisation."""
    vecs = [np.asarray(k).reshape(-1) for k in kraus]
    return sum(np.outer(v, v.conj()) for v in vecs)


def choi_from_map(apply, d_out: int, d_in: int, exact: bool = False) -> np.ndarray:
    """Choi matrix of a linear map given as a callable on d_in x d_in matrices."""
    j = qzeros(d_out * d_in, d_out * d_in) if exact else np.zeros((d_out * d_in,) * 2, complex)
    for a in range(d_in):
        for b in range(d_in):
            unit = qzeros(d_in, d_in) if exact else np.zeros((d_in, d_in), complex)
            unit[a, b] = Fraction(1) if exact else 1.0
            out = apply(unit)
            for i in range(d_out):
                for k in range(d_out):
                    j[i * d_in + a, k * d_in + b] = out[i, k]
    return j


def eigvalsh(m: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(to_complex(m))


@dataclass(frozen=True)
class CPTPReport:
    is_cp: bool
    is_tp: bool
    min_eigenvalue: float
    tp_residual: float


def check_cptp(j: np.ndarray, d_out: int, d_in: int) -> CPTPReport:
    _check_square(j, d_out * d_in, "check_cptp")
    jc = to_complex(j)
    jc = (jc + jc.conj().T) / 2
    lo = float(np.min(np.linalg.eigvalsh(jc)))
    residual = float(np.max(np.abs(partial_trace(jc, (d_out, d_in), "first") - np.eye(d_in))))
    return CPTPReport(lo >= TOL.psd, residual <= TOL.cptp, lo, residual)


def fidelity(psi: np.ndarray, rho: np.ndarray) -> float:
    """Overlap ``<psi|rho|psi>`` of a pure state with a density matrix."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    rho = to_complex(rho)
    _check_square(rho, psi.size, "fidelity")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-12:
        raise ValueError("psi is not normalised")
    return float(np.vdot(psi, rho @ psi).real)


def is_density_matrix(rho: np.ndarray) -> bool:
    rho = to_complex(rho)
    if np.max(np.abs(rho - rho.conj().T), initial=0.0) > TOL.herm:
        return False
    if abs(np.trace(rho) - 1) > TOL.trace:
        return False
    return float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2))) >= TOL.psd


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, complex)
    v[index] = 1.0
    return v


def direct_sum(*blocks: np.ndarray) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    exact = all(is_exact(b) for b in blocks)
    out = qzeros(rows, cols) if exact else np.zeros((rows, cols), complex)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


# ------------------------------------------------------------ serialisation

def matrix_to_json(m: np.ndarray) -> dict:
    """``{"rows", "cols", "entries"}`` with "p/q" strings or [re, im] pairs."""
    m = np.atleast_2d(m)
    if is_exact(m):
        entries = [f"{Fraction(v).numerator}/{Fraction(v).denominator}" for v in m.reshape(-1)]
    else:
        entries = [[float(v.real), float(v.imag)] for v in np.asarray(m, complex).reshape(-1)]
    return {"rows": int(m.shape[0]), "cols": int(m.shape[1]), "entries": entries}


def matrix_from_json(obj: dict | str) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError("entry count does not match shape")
    if entries and isinstance(entries[0], str):
        flat = [Fraction(e) for e in entries]
        out = np.empty(rows * cols, dtype=object)
        out[:] = flat
        return out.reshape(rows, cols)
    return np.array([complex(re, im) for re, im in entries], complex).reshape(rows, cols)
