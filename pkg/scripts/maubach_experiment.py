#!/usr/bin/env python3
"""Which permutations of F_q^n do tame automorphisms reach?

Prints the sign distribution of random tame words for several small fields and,
where q^n <= 9, the order of the group generated by the standard generators.
"""

import argparse
import math

from tamesign.cli.commands import Request, run_maubach
from tamesign.gf import field_of_order


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qs", default="2,3,4,5,7,8")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"{'q':>3} {'expected':>8} {'+1':>5} {'-1':>5} {'closure':>10} {'|Sym|':>10}")
    for q in map(int, args.qs.split(",")):
        field = field_of_order(q)
        rep = run_maubach(Request("maubach", field, args.n, samples=args.samples, seed=args.seed))
        dist = rep["distribution"]
        closure = sym = "-"
        if q**args.n <= 9:
            c = run_maubach(Request("maubach", field, args.n, mode="closure"))
            closure, sym = c["subgroup_order"], math.factorial(q**args.n)
        print(f"{q:>3} {rep['expected']:>8} {dist['+1']:>5} {dist['-1']:>5} {closure:>10} {sym:>10}")


if __name__ == "__main__":
    main()
