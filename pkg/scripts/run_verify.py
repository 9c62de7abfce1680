#!/usr/bin/env python3
"""Formula-vs-oracle sweep over several fields and arities, one line per (q, n, family)."""

import argparse
import random
import sys
import time

from tamesign.cli.commands import instance_seed
from tamesign.gf import field_of_order
from tamesign.perm import oracle_sign
from tamesign.sampling import FAMILIES, random_instance
from tamesign.signcalc import formula_sign


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--qs", default="2,3,4,5,7,8,9")
    ap.add_argument("--ns", default="2,3")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-points", type=int, default=4096)
    args = ap.parse_args(argv)

    total = bad = 0
    t0 = time.perf_counter()
    print(f"{'q':>3} {'n':>2} {'family':<11} {'cases':>6} {'-1':>5} {'disagree':>8}")
    for q in map(int, args.qs.split(",")):
        field = field_of_order(q)
        for n in map(int, args.ns.split(",")):
            if q**n > args.max_points:
                continue
            for family in FAMILIES:
                odd = miss = 0
                for k in range(args.samples):
                    s = instance_seed(args.seed, q, n, family, k)
                    x = random_instance(random.Random(s), family, field, n)
                    f, o = formula_sign(x), oracle_sign(x)
                    odd += o == -1
                    if f != o:
                        miss += 1
                        print(f"  disagreement: seed {s}", file=sys.stderr)
                total += args.samples
                bad += miss
                print(f"{q:>3} {n:>2} {family:<11} {args.samples:>6} {odd:>5} {miss:>8}")
    print(f"{total} cases, {bad} disagreements, {time.perf_counter() - t0:.1f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
