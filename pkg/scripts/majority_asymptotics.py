"""Scaling of the optimal majority fidelity, with and without a weight promise."""
import argparse
from fractions import Fraction

from eqchan.fidopt import BoolFn, promise_weights, solve_lp, trivial_strategy_fidelity


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("sizes", nargs="*", type=int, default=[11, 51, 101, 201, 501, 1001])
    ap.add_argument("--divisor", type=int, default=6, help="promise keeps weights h <= n // divisor")
    args = ap.parse_args()
    print(f"{'n':>6} {'F':>10} {'(F-1/2)sqrt(n)':>16} {'F promise':>10} {'n(1-F)':>8} {'baseline':>9}")
    for n in args.sizes:
        maj = BoolFn.majority(n)
        free = solve_lp(n, maj).fidelity
        prom = solve_lp(n, maj, promise_weights(n, args.divisor)).fidelity
        print(f"{n:>6} {float(free):>10.6f} {float(free - Fraction(1, 2)) * n ** 0.5:>16.4f} "
              f"{float(prom):>10.6f} {float(n * (1 - prom)):>8.4f} "
              f"{float(trivial_strategy_fidelity(n, False)):>9.6f}")


if __name__ == "__main__":
    main()
