"""Self-check suite behind ``eqchan verify``.

Each check returns ``(ok, detail)``.  Checks flagged ``conjecture`` are
reported separately and never change the exit status.
"""
from __future__ import annotations

import copy
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import cg, channels, choi_synth, fidopt, rep2, schur, sim
from .golden import golden_choi, golden_choi_entries, golden_tables
from .numerics import check_cptp, choi_apply, direct_sum, eigvalsh, rationalize, qmatrix


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[["Context"], tuple[bool, str]]
    levels: tuple[str, ...] = ("quick", "full")
    conjecture: bool = False


@dataclass
class Context:
    level: str
    seed: int
    tables: dict

    @property
    def full(self) -> bool:
        return self.level == "full"

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _q(s: str) -> Fraction:
    return Fraction(s)


def _fmt_seq(vals) -> str:
    return "(" + ", ".join(str(v) for v in vals) + ")"


def _random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


# ------------------------------------------------------------------- checks

def check_small_table(ctx: Context):
    for row in ctx.tables["optimal_small"]:
        f = fidopt.BoolFn.from_string(row["table"])
        sol = fidopt.solve_lp(f.n, f)
        want = (_q(row["fidelity"]), tuple(map(_q, row["t"])), tuple(map(_q, row["c"])))
        if (sol.fidelity, sol.t, sol.per_weight) != want:
            return False, (f"{row['name']}: got F={sol.fidelity} t={_fmt_seq(sol.t)} "
                           f"c={_fmt_seq(sol.per_weight)}, expected F={row['fidelity']}")
    return True, f"{len(ctx.tables['optimal_small'])} rows exact"


def _sweep(ctx: Context, sizes):
    count = 0
    for n in sizes:
        for f in fidopt.all_functions(n):
            got = fidopt.solve_lp(n, f).fidelity
            if got != _q(ctx.tables["sweep"][f.table()]):
                return False, f"{f.table()}: {got}"
            count += 1
    return True, f"{count} functions exact"


def check_sweep_small(ctx):
    return _sweep(ctx, (1, 3, 5))


def check_sweep_n7(ctx):
    return _sweep(ctx, (7,))


def check_majority(ctx):
    top = 21 if ctx.full else 11
    for n in range(1, top + 1, 2):
        want = _q(ctx.tables["majority"][str(n)])
        rec = fidopt.majority_fidelity_recursive(n)
        lp = fidopt.solve_lp(n, fidopt.BoolFn.majority(n)).fidelity
        if not rec == lp == want:
            return False, f"n={n}: recursion {rec}, LP {lp}, reference {want}"
        dec = ctx.tables["majority_decimal"].get(str(n))
        if dec is not None and dec != "1." and f"{float(want):.6f}" != dec:
            return False, f"n={n}: decimal {float(want):.6f} vs {dec}"
    return True, f"odd n <= {top} agree"


def check_asymptotics(ctx):
    sizes = (101, 501, 1001) if ctx.full else (101,)
    parts = []
    for n in sizes:
        maj = fidopt.BoolFn.majority(n)
        free = fidopt.solve_lp(n, maj).fidelity
        promised = fidopt.solve_lp(n, maj, fidopt.promise_weights(n)).fidelity
        a = float(free - Fraction(1, 2)) * n ** 0.5
        b = float(n * (1 - promised))
        if not (0.1 <= a <= 10 and 0.1 <= b <= 10):
            return False, f"n={n}: sqrt window {a:.4f}, promise window {b:.4f}"
        parts.append(f"n={n}: {a:.3f}/{b:.3f}")
    return True, "; ".join(parts)


def check_extremal(ctx):
    top = 10 if ctx.full else 5
    rng = ctx.rng()
    worst = 0.0
    for l in range(1, top + 1):
        jt, ju = channels.extremal_choi(l, "tr"), channels.extremal_choi(l, "unot")
        worst = max(worst, float(np.max(np.abs(l * jt + (l + 2) * ju - (l + 1) * np.eye(2 * l + 2)))))
        a = _random_complex(rng, (l + 1, l + 1))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        for which, j in (("tr", jt), ("unot", ju)):
            ref = channels.apply_extremal(l, which, rho)
            outs = (choi_apply(j, rho, 2, l + 1),
                    channels.kraus_apply(channels.extremal_kraus(l, which), rho),
                    channels.stinespring_apply(channels.extremal_stinespring(l, which), rho),
                    channels.circuit_apply(channels.extremal_circuit(l, which), rho))
            worst = max(worst, max(float(np.max(np.abs(o - ref))) for o in outs))
    if worst > 1e-10:
        return False, f"max deviation {worst:.2e}"
    j1 = rationalize(channels.extremal_choi(1, "tr"))
    j2 = rationalize(channels.extremal_choi(1, "unot"))
    ok1 = np.array_equal(j1, qmatrix([[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]]))
    ok2 = np.array_equal(j2, qmatrix([[Fraction(1, 3), 0, 0, Fraction(-1, 3)], [0, Fraction(2, 3), 0, 0],
                                      [0, 0, Fraction(2, 3), 0], [Fraction(-1, 3), 0, 0, Fraction(1, 3)]]))
    if not (ok1 and ok2):
        return False, "l=1 Choi matrices differ from reference"
    return True, f"l <= {top}, max deviation {worst:.1e}"


def check_cg(ctx):
    top = 10 if ctx.full else 5
    rng = ctx.rng()
    worst = 0.0
    for l in range(1, top + 1):
        c = cg.cg_transform(l).matrix
        d = cg.dual_cg_transform(l).matrix
        for _ in range(10):
            m = _random_complex(rng, (2, 2))
            if abs(np.linalg.det(m)) < 1e-6:
                continue
            det = np.linalg.det(m)
            lhs = c @ np.kron(m, rep2.wigner_t(l, m)) @ c.T
            rhs = direct_sum(det * rep2.wigner_t(l - 1, m), rep2.wigner_t(l + 1, m))
            lhs2 = d @ np.kron(cg.cofactor_transpose(m), rep2.wigner_t(l, m)) @ d.T
            rhs2 = direct_sum(rep2.wigner_t(l - 1, m), rep2.wigner_t(l + 1, m) / det)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))), float(np.max(np.abs(lhs2 - rhs2))))
    d1 = np.array([[1, 0, 0, 1], [0, 0, 2 ** 0.5, 0], [-1, 0, 0, 1], [0, -(2 ** 0.5), 0, 0]]) / 2 ** 0.5
    d1_err = float(np.max(np.abs(cg.dual_cg_transform(1).matrix - d1)))
    ok = worst <= 1e-9 and d1_err <= 1e-12
    return ok, f"decomposition error {worst:.1e}, D1 error {d1_err:.1e}"


def check_schur(ctx):
    top = 6 if ctx.full else 5
    rng = ctx.rng()
    worst = 0.0
    for n in range(1, top + 1):
        basis = schur.build_schur_basis(n)
        u = basis.u_sch
        worst = max(worst, float(np.max(np.abs(u @ u.conj().T - np.eye(2 ** n)))))
        for i in range(n - 1):
            pi = list(range(n))
            pi[i], pi[i + 1] = pi[i + 1], pi[i]
            rot = u @ schur.permutation_matrix(n, pi) @ u.conj().T
            expect = np.zeros_like(rot)
            for b in basis.blocks:
                sl = slice(b.offset, b.offset + b.size)
                blk = rot[sl, sl].reshape(b.m, b.d, b.m, b.d)
                inner = blk[0, :, 0, :]
                expect[sl, sl] = np.kron(np.eye(b.m), inner)
            worst = max(worst, float(np.max(np.abs(rot - expect))))
        for _ in range(10):
            m = _random_complex(rng, (2, 2))
            rot = u @ sim.tensor_power(m, n) @ u.conj().T
            expect = direct_sum(*[np.kron(rep2.q_lambda(b.partition, m), np.eye(b.d)) for b in basis.blocks])
            worst = max(worst, float(np.max(np.abs(rot - expect))) / max(1.0, float(np.max(np.abs(expect)))))
        for _ in range(10 if n <= 5 else 3):
            a = _random_complex(rng, (2 ** n, 2 ** n))
            rho = a @ a.conj().T
            rho /= np.trace(rho)
            sym = schur.symmetrize(n, rho)
            back = schur.preprocess_inverse(n, schur.preprocess(n, sym))
            worst = max(worst, float(np.max(np.abs(back - sym))))
    return worst <= 1e-9, f"n <= {top}, max deviation {worst:.1e}"


def _sim_agreement(ctx, sizes):
    worst = 0.0
    count = 0
    for n in sizes:
        for f in fidopt.all_functions(n):
            sol = fidopt.solve_lp(n, f)
            got = sim.worst_case_fidelity_sim(n, f, sol.t)
            worst = max(worst, abs(got - float(sol.fidelity)))
            count += 1
    n = max(sizes)
    f = fidopt.BoolFn.majority(n)
    spread = float(np.ptp(sim.per_unitary_fidelities(n, f, fidopt.solve_lp(n, f).t, n // 2, 20, ctx.seed)))
    ok = worst <= 1e-9 and spread <= 1e-10
    return ok, f"{count} functions, max |sim - exact| {worst:.1e}, per-U spread {spread:.1e}"


def check_sim_small(ctx):
    return _sim_agreement(ctx, (1, 3, 5))


def check_sim_n7(ctx):
    return _sim_agreement(ctx, (7,))


def check_goldens(ctx):
    matched = 0
    for entry in golden_choi_entries():
        f = fidopt.BoolFn.from_string(entry["table"])
        if entry["kind"] == "optimal":
            res = choi_synth.synthesize_choi(f.n, f, fidopt.solve_lp(f.n, f).per_weight)
            want_cp = True
        else:
            res = choi_synth.ideal_choi(f.n, f)
            want_cp = entry["name"] == "ID"
        if not np.array_equal(res.matrix, golden_choi(entry["table"], entry["kind"])):
            return False, f"{entry['kind']} {entry['name']} differs"
        report = check_cptp(res.matrix, 2, 2 ** f.n)
        if report.is_cp != want_cp or not report.is_tp:
            return False, f"{entry['kind']} {entry['name']}: CP={report.is_cp} TP={report.is_tp}"
        matched += 1
    ev = np.sort(eigvalsh(choi_synth.ideal_choi(1, fidopt.BoolFn.from_string("1")).matrix))
    if np.max(np.abs(ev - np.array([-1, 1, 1, 1]))) > 1e-12:
        return False, f"ideal NOT spectrum {ev}"
    return True, f"{matched} reference matrices exact"


def check_monotone(ctx):
    for n in range(1, 32, 2):
        vals = [fidopt.majority_fidelity_direct(n, h) for h in range(n // 2 + 1)]
        if any(a <= b for a, b in zip(vals, vals[1:])):
            return False, f"n={n} not strictly decreasing"
    return True, "odd n <= 31"


def conj_parity(ctx):
    top = 39 if ctx.full else 21
    bad = [n for n in range(1, top + 1, 2)
           if fidopt.solve_lp(n, fidopt.BoolFn.parity(n)).fidelity != fidopt.parity_conjecture(n)]
    listed = [n for n in range(1, min(top, 39) + 1, 2)
              if fidopt.parity_conjecture(n) != _q(ctx.tables["parity"][str(n)])]
    return not bad and not listed, f"odd n <= {top}" + (f"; mismatches {bad + listed}" if bad or listed else "")


def conj_ideal_t(ctx):
    for n in (1, 3, 5):
        for f in fidopt.all_functions(n):
            t = [choi_synth.conjectured_ideal_t(n, f, k) for k in range(n // 2 + 1)]
            if any(c != 1 for c in fidopt.per_weight_fidelity(n, f, t)):
                return False, f"{f.table()} fails"
    return True, "n in {1, 3, 5}"


CHECKS: tuple[Check, ...] = (
    Check("optimal fidelity table n<=3", check_small_table),
    Check("n=1,3,5 sweep", check_sweep_small),
    Check("n=7 sweep", check_sweep_n7, ("full",)),
    Check("majority sequence", check_majority),
    Check("majority asymptotic windows", check_asymptotics),
    Check("extremal channel identities", check_extremal),
    Check("Clebsch-Gordan decompositions", check_cg),
    Check("Schur basis oracles", check_schur),
    Check("simulation vs LP n<=5", check_sim_small),
    Check("simulation vs LP n=7", check_sim_n7, ("full",)),
    Check("reference Choi matrices", check_goldens),
    Check("majority monotonicity", check_monotone),
    Check("parity closed form", conj_parity, conjecture=True),
    Check("conjectured ideal mixing weights", conj_ideal_t, conjecture=True),
)


@dataclass(frozen=True)
class Outcome:
    check: Check
    ok: bool
    detail: str
    seconds: float


def _timed(chk: Check, ctx: Context) -> tuple[bool, str, float]:
    start = time.perf_counter()
    try:
        ok, detail = chk.run(ctx)
    except Exception as err:  # a crashing check is a failing check
        ok, detail = False, f"{type(err).__name__}: {err}"
    return ok, detail, time.perf_counter() - start


def run_checks(level: str = "quick", seed: int = 0, tables: dict | None = None,
               workers: int | None = None) -> list[Outcome]:
    """Run every check enabled at ``level``; independent checks go to a process pool."""
    ctx = Context(level, seed, copy.deepcopy(tables if tables is not None else golden_tables()))
    selected = [chk for chk in CHECKS if level in chk.levels]
    workers = workers if workers is not None else (os.cpu_count() or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(selected))) as pool:
            raw = list(pool.map(_timed, selected, [ctx] * len(selected)))
    else:
        raw = [_timed(chk, ctx) for chk in selected]
    return [Outcome(chk, *r) for chk, r in zip(selected, raw)]


def perturbed_tables() -> dict:
    """Reference tables with one value nudged, for exercising the failure path."""
    tables = copy.deepcopy(golden_tables())
    tables["optimal_small"][2]["fidelity"] = "9/10"
    return tables


__all__ = ["CHECKS", "Check", "Outcome", "run_checks", "perturbed_tables"]
