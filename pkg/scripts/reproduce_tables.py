"""Optimal fidelities of every symmetric self-dual function up to a given size."""
import argparse
import csv
import sys
import time

from eqchan.fidopt import all_functions, solution_csv_row, solve_lp


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=7, help="largest odd n (default 7)")
    args = ap.parse_args()
    out = csv.writer(sys.stdout)
    out.writerow(["table", "F", "decimal", "t", "c"])
    start = time.perf_counter()
    for n in range(1, args.n_max + 1, 2):
        for f in all_functions(n):
            out.writerow(solution_csv_row(f, solve_lp(n, f)))
    print(f"# {time.perf_counter() - start:.2f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
