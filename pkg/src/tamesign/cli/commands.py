"""Command implementations; each ``run_*`` returns a JSON-ready report dict."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .. import signcalc
from ..automorphism import AffineAut, ElementaryAut, PolyMap, RowAdd, Scale, Swap, TameWord, TriangularAut
from ..errors import ClosureTooLarge, NotFormulaEligible, TameSignError
from ..gf import FiniteField, field_of_order
from ..mvpoly import MultivariatePolynomial as Poly
from ..perm import DEFAULT_BUDGET, Permutation, induced_permutation, permutation_sign
from ..sampling import FAMILIES, random_instance, random_tame_word
from .grammar import format_factor, format_word, parse_map, parse_polymap, parse_word

CLOSURE_CAP = 10**6


class UsageError(TameSignError):
    pass


@dataclass
class Request:
    command: str
    field: FiniteField
    n: int
    map_text: str | None = None
    word_text: str | None = None
    samples: int = 200
    seed: int = 0
    length: int | None = None
    families: tuple[str, ...] = FAMILIES
    mix: tuple[str, ...] = ("affine", "triangular", "elementary")
    qs: tuple[int, ...] = ()
    ns: tuple[int, ...] = ()
    mode: str = "signs"
    budget: int = DEFAULT_BUDGET
    extra: dict = dc_field(default_factory=dict)


def field_info(field: FiniteField) -> dict:
    return {"p": field.p, "m": field.m, "modulus": list(field.modulus) if field.modulus else None}


def _report(command: str, field: FiniteField | None, n: int | None, started: float, **kw) -> dict:
    out = {
        "command": command,
        "field": field_info(field) if field is not None else None,
        "n": n,
        "sign": None,
        "method": None,
        "factors": [],
        "timing_ms": None,
        "counterexample": None,
    }
    out.update(kw)
    out["timing_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return out


def _subject(req: Request):
    """The parsed --word (a TameWord) or --map (classified)."""
    if req.word_text is not None:
        return parse_word(req.word_text, req.field, req.n)
    if req.map_text is not None:
        return parse_map(req.map_text, req.field, req.n)
    raise UsageError("one of --map or --word is required")


def family_name(x) -> str:
    return {
        TameWord: "tame_word",
        AffineAut: "affine",
        TriangularAut: "triangular",
        ElementaryAut: "elementary",
    }.get(type(x), "generic")


def run_sign(req: Request) -> dict:
    t0 = time.perf_counter()
    x = _subject(req)
    if isinstance(x, PolyMap):
        raise NotFormulaEligible("map is not elementary, affine or triangular; use the oracle command")
    if isinstance(x, TameWord):
        factors = signcalc.word_breakdown(x)
    elif isinstance(x, AffineAut):
        factors = signcalc.affine_breakdown(x)
    else:
        factors = [{"kind": type(x).__name__, "sign": signcalc.formula_sign(x)}]
    return _report("sign", req.field, req.n, t0, sign=signcalc.formula_sign(x), method="formula",
                   family=family_name(x), factors=factors)


def _oracle_subject(req: Request):
    if req.word_text is not None:
        return parse_word(req.word_text, req.field, req.n)
    if req.map_text is not None:
        return parse_polymap(req.map_text, req.field, req.n)
    raise UsageError("one of --map or --word is required")


def run_oracle(req: Request) -> dict:
    t0 = time.perf_counter()
    sigma = induced_permutation(_oracle_subject(req), budget=req.budget)
    return _report("oracle", req.field, req.n, t0, sign=permutation_sign(sigma), method="oracle",
                   points=sigma.size)


def run_perm(req: Request) -> dict:
    t0 = time.perf_counter()
    sigma = induced_permutation(_oracle_subject(req), budget=req.budget)
    cycles = [list(c) for c in sigma.cycles()]
    return _report("perm", req.field, req.n, t0, sign=permutation_sign(sigma), method="oracle",
                   points=sigma.size, cycles=cycles, fixed_points=sigma.size - sum(map(len, cycles)))


def run_decompose(req: Request) -> dict:
    t0 = time.perf_counter()
    x = _subject(req)
    if isinstance(x, ElementaryAut):
        x = _affine_or_none(x)
    if not isinstance(x, AffineAut):
        raise NotFormulaEligible("decompose needs an affine map")
    summary = signcalc.decompose_linear(x.matrix)
    factors = [{"kind": type(g).__name__, "text": format_factor(g),
                "sign": signcalc.sign_linear_factor(g, x.field, x.n)} for g in summary.factors]
    return _report(
        "decompose", req.field, req.n, t0,
        sign=signcalc.sign_affine(x), method="formula", factors=factors,
        word=format_word(TameWord(x.field, x.n, summary.factors)),
        n_swap=summary.n_swap, n_scale=summary.n_scale, n_rowadd=summary.n_rowadd,
        scale_constants=[str(c) for c in summary.scale_constants],
        determinant=str(x.det),
    )


def _affine_or_none(E: ElementaryAut):
    from .grammar import _as_affine

    return _as_affine(E.polymap)


def run_random_tame(req: Request) -> dict:
    t0 = time.perf_counter()
    rng = random.Random(req.seed)
    w = random_tame_word(rng, req.field, req.n, length=req.length, mix=req.mix)
    return _report("random-tame", req.field, req.n, t0, sign=signcalc.sign_tame_word(w),
                   method="formula", factors=signcalc.word_breakdown(w), word=format_word(w),
                   seed=req.seed)


def instance_seed(seed: int, q: int, n: int, family: str, k: int) -> str:
    return f"{seed}:{q}:{n}:{family}:{k}"


def instance_text(x) -> str:
    if isinstance(x, TameWord):
        return format_word(x)
    return format_factor(x)


def run_verify(req: Request, formula: Callable = signcalc.formula_sign) -> dict:
    """Formula vs oracle on seeded random instances; ``formula`` is a test hook."""
    t0 = time.perf_counter()
    cases = 0
    by_family: dict[str, int] = {}
    bad = []
    for q in req.qs:
        for n in req.ns:
            field = field_of_order(q)
            if q**n > req.budget:
                raise UsageError(f"q^n = {q**n} exceeds the budget {req.budget}")
            for family in req.families:
                for k in range(req.samples):
                    s = instance_seed(req.seed, q, n, family, k)
                    x = random_instance(random.Random(s), family, field, n)
                    f_sign = formula(x)
                    o_sign = permutation_sign(induced_permutation(x, budget=req.budget))
                    cases += 1
                    by_family[family] = by_family.get(family, 0) + 1
                    if f_sign != o_sign:
                        bad.append({
                            "q": q, "n": n, "family": family, "instance_seed": s,
                            "word": instance_text(x), "formula_sign": f_sign, "oracle_sign": o_sign,
                        })
    counterexample = min(bad, key=lambda b: (b["q"] ** b["n"], len(b["word"]))) if bad else None
    return _report(
        "verify", None, None, t0, method="formula-vs-oracle",
        status="all agree" if not bad else "disagreement",
        cases=cases, disagreements=len(bad), by_family=by_family,
        qs=list(req.qs), ns=list(req.ns), samples=req.samples, seed=req.seed,
        counterexample=counterexample,
    )


def closure_generators(field: FiniteField, n: int) -> list:
    """Swap, cyclic shift, scaling by a generator, X1 += X2, X1 += 1, X1 += prod_{j>1} X_j^(q-1)."""
    one = field.one
    gens: list = []
    if n >= 2:
        gens.append(Swap(1, 2))
    if n >= 3:
        shift = tuple(tuple(one if j == (i + 1) % n else field.zero for j in range(n)) for i in range(n))
        gens.append(AffineAut(field, n, shift, (field.zero,) * n))
    if field.q > 2:
        gens.append(Scale(1, field.generator))
    if n >= 2:
        gens.append(RowAdd(1, 2, one))
    b = (one,) + (field.zero,) * (n - 1)
    gens.append(AffineAut(field, n, tuple(tuple(one if i == j else field.zero for j in range(n))
                                          for i in range(n)), b))
    exps = (0,) + (field.q - 1,) * (n - 1)
    gens.append(ElementaryAut(field, n, 1, Poly.monomial(field, n, exps)))
    return gens


def permutation_closure(gens: list[Permutation], cap: int = CLOSURE_CAP) -> int:
    """Order of the group generated by ``gens`` (breadth-first, hashed image tables)."""
    if not gens:
        return 1
    size = gens[0].size
    ident = np.arange(size, dtype=np.int64 if size > 255 else np.uint8)
    g_arrays = [g.images.astype(ident.dtype) for g in gens]
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for s in frontier:
            for g in g_arrays:
                t = g[s]
                key = t.tobytes()
                if key not in seen:
                    seen.add(key)
                    if len(seen) > cap:
                        raise ClosureTooLarge(f"closure exceeds {cap} elements")
                    nxt.append(t)
        frontier = nxt
    return len(seen)


def run_maubach(req: Request) -> dict:
    t0 = time.perf_counter()
    field, n, q = req.field, req.n, req.field.q
    expected = "Alt" if (q % 2 == 0 and q > 2) else "Sym"
    if req.mode == "closure":
        if q**n > 9:
            raise ClosureTooLarge(f"closure mode is limited to q^n <= 9, got {q**n}")
        gens = closure_generators(field, n)
        perms = []
        for g in gens:
            sigma = induced_permutation(g, field, n, budget=req.budget)
            if not any(sigma == h for h in perms):
                perms.append(sigma)
        order = permutation_closure(perms)
        sym = math.factorial(q**n)
        return _report(
            "maubach", field, n, t0, method="closure", mode="closure",
            generators=len(perms), subgroup_order=order, symmetric_order=sym,
            alternating_order=sym // 2, expected=expected,
            consistent=order == (sym if expected == "Sym" else sym // 2),
        )
    if req.mode != "signs":
        raise UsageError(f"unknown maubach mode {req.mode!r}")
    rng = random.Random(req.seed)
    counts = {"+1": 0, "-1": 0}
    disagreements = 0
    for _ in range(req.samples):
        w = random_tame_word(rng, field, n, length=rng.randint(1, 5), mix=req.mix)
        s = signcalc.sign_tame_word(w)
        counts["+1" if s == 1 else "-1"] += 1
        if q**n <= req.budget and permutation_sign(induced_permutation(w, budget=req.budget)) != s:
            disagreements += 1
    if expected == "Alt":
        consistent = counts["-1"] == 0
    else:
        consistent = counts["+1"] > 0 and counts["-1"] > 0
    return _report("maubach", field, n, t0, method="formula", mode="signs", samples=req.samples,
                   distribution=counts, expected=expected, consistent=consistent and not disagreements,
                   oracle_disagreements=disagreements)


COMMANDS = {
    "sign": run_sign,
    "oracle": run_oracle,
    "perm": run_perm,
    "decompose": run_decompose,
    "random-tame": run_random_tame,
    "verify": run_verify,
    "maubach": run_maubach,
}
