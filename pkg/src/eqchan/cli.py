"""Command-line interface."""
from __future__ import annotations

import csv
import json
import sys
import time

import click
import numpy as np

from . import fidopt
from .config import DEFAULTS
from .golden import golden_choi
from .numerics import check_cptp, matrix_to_json

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_SIZE = 0, 1, 2, 3


def _fmt(q) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_table(table: str) -> fidopt.BoolFn:
    try:
        return fidopt.BoolFn.from_string(table)
    except ValueError as err:
        raise click.UsageError(str(err)) from err


@click.group()
@click.option("--seed", type=int, default=DEFAULTS.seed, show_default=True, help="RNG seed for randomised checks.")
@click.pass_context
def main(ctx: click.Context, seed: int) -> None:
    """Optimal unitary-equivariant channels for symmetric Boolean functions."""
    ctx.obj = {"seed": seed}


@main.command()
@click.argument("table")
@click.option("--promise-weights", default=None, help='Comma-separated allowed weights, e.g. "0,1".')
@click.option("--json", "as_json", is_flag=True, help="Emit JSON.")
@click.option("--csv", "as_csv", is_flag=True, help="Emit one CSV row.")
def fidelity(table: str, promise_weights: str | None, as_json: bool, as_csv: bool) -> None:
    """Optimal worst-case fidelity for a half truth table such as 00 or 0101."""
    f = _parse_table(table)
    weights = None
    if promise_weights:
        try:
            weights = [int(w) for w in promise_weights.split(",")]
        except ValueError as err:
            raise click.UsageError(f"bad --promise-weights: {promise_weights!r}") from err
        if any(not 0 <= w <= f.half for w in weights):
            raise click.UsageError(f"promise weights must lie in 0..{f.half}")
    if as_json and as_csv:
        raise click.UsageError("--json and --csv are exclusive")
    sol = fidopt.solve_lp(f.n, f, weights)
    if as_json:
        click.echo(json.dumps({"table": f.table(), "n": f.n, "fidelity": _fmt(sol.fidelity),
                               "decimal": float(sol.fidelity), "t": [_fmt(v) for v in sol.t],
                               "c": [_fmt(v) for v in sol.per_weight],
                               "weight_set": list(sol.weight_set)}))
    elif as_csv:
        csv.writer(sys.stdout).writerow(fidopt.solution_csv_row(f, sol))
    else:
        click.echo(f"F = {_fmt(sol.fidelity)} ≈ {float(sol.fidelity):.6f}")
        click.echo("t = " + ", ".join(_fmt(v) for v in sol.t))
        click.echo("c = " + ", ".join(_fmt(v) for v in sol.per_weight))


@main.command("majority-table")
@click.argument("n_max", type=int)
def majority_table(n_max: int) -> None:
    """CSV of majority fidelities for odd n up to N_MAX, computed two ways."""
    if n_max < 1 or n_max % 2 == 0:
        raise click.UsageError("n_max must be a positive odd integer")
    out = csv.writer(sys.stdout)
    out.writerow(["n", "F", "decimal", "agree"])
    for n in range(1, n_max + 1, 2):
        rec = fidopt.majority_fidelity_recursive(n)
        lp = fidopt.solve_lp(n, fidopt.BoolFn.majority(n)).fidelity
        out.writerow([n, _fmt(rec), f"{float(rec):.6f}", str(rec == lp).lower()])


@main.command()
@click.argument("table")
@click.option("--optimal", "mode", flag_value="optimal", help="Channel at LP-optimal fidelity.")
@click.option("--ideal", "mode", flag_value="ideal", help="Linear map with fidelity one.")
@click.option("--golden", is_flag=True, help="Compare against the shipped reference matrix.")
def choi(table: str, mode: str | None, golden: bool) -> None:
    """Exact Choi matrix as JSON."""
    from . import choi_synth

    if mode is None:
        raise click.UsageError("choose --optimal or --ideal")
    f = _parse_table(table)
    if f.n > DEFAULTS.max_choi_n:
        click.echo(f"n={f.n} exceeds the supported maximum of {DEFAULTS.max_choi_n}", err=True)
        sys.exit(EXIT_SIZE)
    if mode == "optimal":
        res = choi_synth.synthesize_choi(f.n, f, fidopt.solve_lp(f.n, f).per_weight)
    else:
        res = choi_synth.ideal_choi(f.n, f)
    report = check_cptp(res.matrix, 2, 2 ** f.n)
    payload = {"table": f.table(), "n": f.n, "kind": mode, "is_cp": report.is_cp,
               "is_tp": report.is_tp, "matrix": matrix_to_json(res.matrix)}
    if golden:
        ref = golden_choi(f.table(), mode)
        if ref is None:
            click.echo(f"no reference matrix for {mode} {f.table()}", err=True)
            sys.exit(EXIT_USAGE)
        payload["golden_match"] = bool(np.array_equal(ref, res.matrix))
    click.echo(json.dumps(payload))
    if golden and not payload["golden_match"]:
        click.echo("mismatch against reference matrix", err=True)
        sys.exit(EXIT_VERIFY)


@main.command()
@click.option("--level", type=click.Choice(["quick", "full"]), default="quick", show_default=True)
@click.option("--inject-fault", is_flag=True, hidden=True, help="Perturb one reference value.")
@click.pass_context
def verify(ctx: click.Context, level: str, inject_fault: bool) -> None:
    """Run the self-check suite; exit 1 if any non-conjecture check fails."""
    from .verify import perturbed_tables, run_checks

    start = time.perf_counter()
    results = run_checks(level, ctx.obj["seed"], perturbed_tables() if inject_fault else None)
    failed = False
    for section, conj in (("checks", False), ("conjectures (informational)", True)):
        click.echo(f"== {section}")
        for r in results:
            if r.check.conjecture != conj:
                continue
            tag = "PASS" if r.ok else "FAIL"
            click.echo(f"{tag}  {r.check.name}  [{r.seconds:.2f}s]  {r.detail}")
            if not r.ok and not conj:
                failed = True
    click.echo(f"total {time.perf_counter() - start:.1f}s")
    sys.exit(EXIT_VERIFY if failed else EXIT_OK)


if __name__ == "__main__":
    main()
