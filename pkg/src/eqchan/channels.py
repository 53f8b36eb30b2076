"""The two extremal unitary-covariant channels from spin-l/2 to a qubit.

``"tr"`` keeps one qubit of the symmetric subspace, ``"unot"`` is the optimal
approximate universal NOT.  Each comes as a Choi matrix, a Kraus list, a
Stinespring isometry (output qubit first, environment second) and a gate list.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .cg import dual_cg_transform
from .numerics import choi_from_kraus, direct_sum, partial_trace
from .rep2 import coherent_state

KINDS = ("tr", "unot")


def _check(l: int, which: str) -> None:
    if l < 1:
        raise ValueError("l must be at least 1")
    if which not in KINDS:
        raise ValueError(f"unknown channel {which!r}; expected one of {KINDS}")


def extremal_choi(l: int, which: str) -> np.ndarray:
    _check(l, which)
    d = dual_cg_transform(l).matrix
    if which == "tr":
        mid = direct_sum((l + 1) / l * np.eye(l), np.zeros((l + 2, l + 2)))
    else:
        mid = direct_sum(np.zeros((l, l)), (l + 1) / (l + 2) * np.eye(l + 2))
    return (d.T @ mid @ d).astype(complex)


def extremal_kraus(l: int, which: str) -> list[np.ndarray]:
    _check(l, which)
    ops = []
    if which == "tr":
        for v in range(l):
            k = np.zeros((2, l + 1), complex)
            k[0, v] = sqrt((l - v) / l)
            k[1, v + 1] = sqrt((v + 1) / l)
            ops.append(k)
    else:
        for w in range(l + 2):
            k = np.zeros((2, l + 1), complex)
            if w >= 1:
                k[0, w - 1] = -sqrt(w / (l + 2))
            if w <= l:
                k[1, w] = sqrt((l + 1 - w) / (l + 2))
            ops.append(k)
    return ops


def env_dim(l: int, which: str) -> int:
    return l if which == "tr" else l + 2


def extremal_stinespring(l: int, which: str) -> np.ndarray:
    """Isometry into ``C^2 (x) C^env`` with the output qubit as first factor."""
    _check(l, which)
    e = env_dim(l, which)
    u = np.zeros((2 * e, l + 1), complex)
    if which == "tr":
        for v in range(l + 1):
            if v < l:
                u[0 * e + v, v] = sqrt((l - v) / l)
            if v > 0:
                u[1 * e + v - 1, v] = sqrt(v / l)
    else:
        for w in range(l + 1):
            u[0 * e + w + 1, w] = -sqrt((w + 1) / (l + 2))
            u[1 * e + w, w] = sqrt((l + 1 - w) / (l + 2))
    return u


def stinespring_apply(u: np.ndarray, rho: np.ndarray) -> np.ndarray:
    e = u.shape[0] // 2
    return partial_trace(u @ rho @ u.conj().T, (2, e), "second")


def apply_extremal(l: int, which: str, rho: np.ndarray) -> np.ndarray:
    """Closed-form channel action, extended linearly from matrix units."""
    _check(l, which)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (l + 1, l + 1):
        raise ValueError(f"expected a {l + 1}x{l + 1} input, got {rho.shape}")
    out = np.zeros((2, 2), complex)
    diag = np.real_if_close(np.diag(rho))
    w = np.arange(l + 1)
    up = np.diag(rho, 1)      # rho[w, w+1]
    down = np.diag(rho, -1)   # rho[w+1, w]
    k = np.arange(l)          # lower index of each off-diagonal pair
    if which == "tr":
        out[0, 0] = np.sum((l - w) / l * diag)
        out[1, 1] = np.sum(w / l * diag)
        coef = np.sqrt((l - k) * (k + 1)) / l
        out[0, 1] = np.sum(coef * up)
        out[1, 0] = np.sum(coef * down)
    else:
        out[0, 0] = np.sum((w + 1) / (l + 2) * diag)
        out[1, 1] = np.sum((l + 1 - w) / (l + 2) * diag)
        coef = -np.sqrt((l - k) * (k + 1)) / (l + 2)
        out[0, 1] = np.sum(coef * up)
        out[1, 0] = np.sum(coef * down)
    return out


def apply_mixture(l: int, weight: float, rho: np.ndarray) -> np.ndarray:
    """``weight * tr + (1 - weight) * unot``."""
    return weight * apply_extremal(l, "tr", rho) + (1 - weight) * apply_extremal(l, "unot", rho)


# ------------------------------------------------------------------ circuits

@dataclass(frozen=True)
class Gate:
    kind: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params}


@dataclass(frozen=True)
class GateList:
    l: int
    which: str
    gates: tuple[Gate, ...]

    def to_json(self) -> str:
        return json.dumps({"l": self.l, "channel": self.which,
                           "gates": [g.to_dict() for g in self.gates]})

    @classmethod
    def from_json(cls, text: str) -> "GateList":
        obj = json.loads(text)
        gates = []
        for g in obj["gates"]:
            g = dict(g)
            kind = g.pop("kind")
            gates.append(Gate(kind, g))
        return cls(obj["l"], obj["channel"], tuple(gates))


def circuit_rotation(span: int, v: int) -> np.ndarray:
    """Rotation taking |0> to sqrt((span-v)/span)|0> + sqrt(v/span)|1>."""
    return np.array([[sqrt(span - v), -sqrt(v)],
                     [sqrt(v), sqrt(span - v)]]) / sqrt(span)


def extremal_circuit(l: int, which: str) -> GateList:
    _check(l, which)
    if which == "tr":
        gates = (
            Gate("prepare", {"target": "qubit", "state": 0}),
            Gate("conditional_rotation", {"target": "qubit", "control": "register",
                                          "span": l, "offset": 0, "controls": l + 1}),
            Gate("shift", {"target": "register", "control": "qubit", "on": 1,
                           "delta": -1, "modulus": l + 1}),
            Gate("discard", {"target": "register", "keep": l}),
        )
    else:
        gates = (
            Gate("prepare", {"target": "qubit", "state": 1}),
            Gate("embed", {"target": "register", "from": l + 1, "to": l + 2}),
            Gate("conditional_rotation", {"target": "qubit", "control": "register",
                                          "span": l + 2, "offset": 1, "controls": l + 1}),
            Gate("shift", {"target": "register", "control": "qubit", "on": 0,
                           "delta": 1, "modulus": l + 2}),
            Gate("discard", {"target": "register", "keep": l + 2}),
        )
    return GateList(l, which, gates)


def circuit_isometry(circ: GateList, trim: bool = True) -> np.ndarray:
    """Dense composition of a gate list, before the final discard.

    Returns a map from ``C^(l+1)`` into ``C^2 (x) C^reg``.  With ``trim`` the
    register is cut down to the dimension named by the discard gate; the
    caller can check that nothing lived in the removed levels.
    """
    reg = circ.l + 1
    state = None  # (2*reg) x (l+1) isometry built gate by gate
    keep = None
    for g in circ.gates:
        p = g.params
        if g.kind == "prepare":
            qubit = np.zeros((2, 1))
            qubit[p["state"], 0] = 1.0
            state = np.kron(qubit, np.eye(reg)).astype(complex)
        elif g.kind == "embed":
            emb = np.zeros((p["to"], p["from"]))
            emb[: p["from"], : p["from"]] = np.eye(p["from"])
            state = np.kron(np.eye(2), emb) @ state
            reg = p["to"]
        elif g.kind == "conditional_rotation":
            op = np.zeros((2 * reg, 2 * reg), complex)
            for v in range(p["controls"]):
                proj = np.zeros((reg, reg))
                proj[v, v] = 1.0
                op += np.kron(circuit_rotation(p["span"], v + p["offset"]), proj)
            # levels above the controlled range are left untouched
            for v in range(p["controls"], reg):
                proj = np.zeros((reg, reg))
                proj[v, v] = 1.0
                op += np.kron(np.eye(2), proj)
            state = op @ state
        elif g.kind == "shift":
            op = np.zeros((2 * reg, 2 * reg))
            for i in (0, 1):
                step = p["delta"] if i == p["on"] else 0
                perm = np.zeros((reg, reg))
                for v in range(reg):
                    perm[(v + step) % p["modulus"], v] = 1.0
                proj = np.zeros((2, 2))
                proj[i, i] = 1.0
                op += np.kron(proj, perm)
            state = op @ state
        elif g.kind == "discard":
            keep = p["keep"]
        else:
            raise ValueError(f"unknown gate {g.kind!r}")
    if trim and keep is not None and keep < reg:
        idx = [q * reg + v for q in (0, 1) for v in range(keep)]
        state = state[idx, :]
    return state


def circuit_apply(circ: GateList, rho: np.ndarray) -> np.ndarray:
    u = circuit_isometry(circ, trim=False)
    return partial_trace(u @ np.asarray(rho, complex) @ u.conj().T, (2, u.shape[0] // 2), "second")


# ----------------------------------------------------------- channel bundle

@dataclass(frozen=True)
class Channel:
    d_in: int
    d_out: int
    choi: np.ndarray
    kraus: tuple[np.ndarray, ...]
    stinespring: np.ndarray
    circuit: GateList | None = None


def extremal_channel(l: int, which: str) -> Channel:
    return Channel(l + 1, 2, extremal_choi(l, which), tuple(extremal_kraus(l, which)),
                   extremal_stinespring(l, which), extremal_circuit(l, which))


def kraus_apply(kraus, rho: np.ndarray) -> np.ndarray:
    return sum(k @ rho @ k.conj().T for k in kraus)


def choi_of_kraus(l: int, which: str) -> np.ndarray:
    return choi_from_kraus(extremal_kraus(l, which))


# -------------------------------------------------------------- quadrature

def unot_integral_check(l: int, rho: np.ndarray, n_grid: int = 64) -> np.ndarray:
    """Bloch-sphere average defining the UNOT channel, by product quadrature.

    Gauss-Legendre nodes in cos(theta) times a uniform grid in phi; the
    integrand is a trigonometric polynomial of low degree, so the result is
    exact up to rounding once the grid exceeds the degree.
    """
    if n_grid < 8:
        raise ValueError("n_grid must be at least 8")
    rho = np.asarray(rho, complex)
    cos_nodes, cos_weights = np.polynomial.legendre.leggauss(n_grid)
    phis = 2 * np.pi * np.arange(n_grid) / n_grid
    out = np.zeros((2, 2), complex)
    for ct, wt in zip(cos_nodes, cos_weights):
        half = np.arccos(ct) / 2
        for phi in phis:
            psi = np.array([np.cos(half), np.exp(1j * phi) * np.sin(half)])
            coh = coherent_state(l, psi)
            weight = np.vdot(coh, rho @ coh)
            out += wt * weight * (np.eye(2) - np.outer(psi, psi.conj()))
    # measure: d(cos) in [-1,1] has mass 2, phi grid has mass 2*pi, total 4*pi
    return (l + 1) * out * (2 * np.pi / n_grid) / (4 * np.pi)
