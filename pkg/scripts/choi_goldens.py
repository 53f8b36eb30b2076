"""Synthesize exact Choi matrices and compare them with the shipped references."""
import argparse

import numpy as np

from eqchan.choi_synth import ideal_choi, synthesize_choi
from eqchan.fidopt import BoolFn, solve_lp
from eqchan.golden import golden_choi, golden_choi_entries
from eqchan.numerics import check_cptp, eigvalsh


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show", metavar="TABLE", help="print the optimal Choi matrix for this table")
    args = ap.parse_args()
    for e in golden_choi_entries():
        f = BoolFn.from_string(e["table"])
        if e["kind"] == "optimal":
            res = synthesize_choi(f.n, f, solve_lp(f.n, f).per_weight)
        else:
            res = ideal_choi(f.n, f)
        rep = check_cptp(res.matrix, 2, 2 ** f.n)
        match = np.array_equal(res.matrix, golden_choi(e["table"], e["kind"]))
        print(f"{e['kind']:>7} {e['name']:>6}  match={match}  cp={rep.is_cp}  "
              f"min eig={rep.min_eigenvalue:+.4f}")
    if args.show:
        f = BoolFn.from_string(args.show)
        m = synthesize_choi(f.n, f, solve_lp(f.n, f).per_weight).matrix
        den = 1
        for v in m.flat:
            den = np.lcm(den, v.denominator)
        print(f"\n(1/{den}) *")
        for row in m:
            print(" ".join(f"{int(v * den):>3}" for v in row))
        print("eigenvalues:", np.round(np.sort(eigvalsh(m)), 6))


if __name__ == "__main__":
    main()
