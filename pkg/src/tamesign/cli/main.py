"""``tamesign`` command-line entry point.

Exit codes: 0 success, 1 usage error, 2 mathematical error, 3 verification
disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..errors import MathError, TameSignError
from ..gf import make_field, prime_power
from ..perm import DEFAULT_BUDGET
from ..sampling import FAMILIES
from .commands import COMMANDS, Request
from .grammar import parse_constant

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_DISAGREE = 0, 1, 2, 3


def _parse_q(text: str) -> tuple[int, int]:
    if "^" in text:
        p, m = text.split("^", 1)
        return int(p), int(m)
    return prime_power(int(text))


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _modulus(text: str, p: int, m: int) -> tuple[int, ...]:
    """Parse a monic polynomial in t such as "t^2 + t + 1" into low-to-high coefficients."""
    import re

    coeffs = [0] * (m + 1)
    for term in re.split(r"\s*\+\s*", text.strip()):
        mt = re.fullmatch(r"(\d+)?\*?(t)?(?:\^(\d+))?", term.replace(" ", ""))
        if mt is None or not term:
            raise TameSignError(f"cannot parse modulus term {term!r}")
        c = int(mt.group(1)) if mt.group(1) else 1
        if mt.group(2):
            k = int(mt.group(3)) if mt.group(3) else 1
        else:
            k = 0
        if k > m:
            raise TameSignError(f"modulus degree exceeds m = {m}")
        coeffs[k] = (coeffs[k] + c) % p
    return tuple(coeffs)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tamesign", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--q", default="2", help="field order q or p^m")
    ap.add_argument("--modulus", help='irreducible modulus, e.g. "t^2 + t + 1"')
    ap.add_argument("--n", type=int, default=2, help="number of variables")
    ap.add_argument("--map", dest="map_text", help='polynomial map, e.g. "(X1 + X2*X3, X2, X3)"')
    ap.add_argument("--word", dest="word_text", help='tame word, e.g. "T(1,2); D(1,2)"')
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--length", type=int, help="random-tame word length")
    ap.add_argument("--families", default=",".join(FAMILIES),
                    help="verify families: " + ",".join(FAMILIES) + ",strict")
    ap.add_argument("--mix", default="affine,triangular,elementary",
                    help="factor kinds for random words")
    ap.add_argument("--qs", default="2,3,4,5", help="verify: comma-separated field orders")
    ap.add_argument("--ns", default="2", help="verify: comma-separated arities")
    ap.add_argument("--mode", default="signs", choices=["signs", "closure"])
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max points enumerated")
    ap.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    return ap


def _render(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if v is None or v == []:
            continue
        if k == "field":
            v = f"F_{v['p']}^{v['m']}" + (f" mod {v['modulus']}" if v["modulus"] else "")
        elif k == "factors":
            v = ", ".join(f"{f['kind']}:{f['sign']:+d}" for f in v)
        elif k == "sign":
            v = f"{v:+d}"
        lines.append(f"{k:>16}  {v}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        p, m = _parse_q(args.q)
        modulus = _modulus(args.modulus, p, m) if args.modulus else None
        field = make_field(p, m, modulus)
        req = Request(
            command=args.command, field=field, n=args.n, map_text=args.map_text,
            word_text=args.word_text, samples=args.samples, seed=args.seed, length=args.length,
            families=tuple(x.strip() for x in args.families.split(",") if x.strip()),
            mix=tuple(x.strip() for x in args.mix.split(",") if x.strip()),
            qs=_int_list(args.qs), ns=_int_list(args.ns), mode=args.mode, budget=args.budget,
        )
        report = COMMANDS[args.command](req)
    except MathError as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)})
              if args.json else f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (TameSignError, ValueError) as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)})
              if args.json else f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(report, indent=2) if args.json else _render(report))
    if report.get("counterexample") is not None:
        return EXIT_DISAGREE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
