"""Density-matrix simulation of the optimal template channel against the exact LP value."""
import argparse
import csv
import sys

from eqchan.fidopt import all_functions, solve_lp
from eqchan.sim import comparison_rows, equivariance_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=7)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["function", "h", "simulated", "exact", "abs_diff"])
    worst = 0.0
    for n in range(1, args.n_max + 1, 2):
        for f in all_functions(n):
            sol = solve_lp(n, f)
            dev = equivariance_check(n, sol.t, 3, args.seed)
            if dev > 1e-9:
                sys.exit(f"{f.table()}: equivariance deviation {dev:.2e}")
            for row in comparison_rows(f, sol.t, sol.per_weight):
                out.writerow(row)
                worst = max(worst, float(row[4]))
    print(f"# max |sim - exact| = {worst:.2e}", file=sys.stderr)


if __name__ == "__main__":
    main()
