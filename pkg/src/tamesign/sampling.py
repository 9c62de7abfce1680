"""Seeded random automorphisms for differential testing and experiments."""

from __future__ import annotations

import random

from . import linalg
from .automorphism import (
    AffineAut,
    ElementaryAut,
    RowAdd,
    Scale,
    Swap,
    TameWord,
    TriangularAut,
)
from .gf import FiniteField
from .mvpoly import MultivariatePolynomial as Poly

FAMILIES = ("elementary", "linear", "affine", "triangular", "tame")


def random_element(rng: random.Random, field: FiniteField, nonzero: bool = False):
    lo = 1 if nonzero else 0
    return field.unrank(rng.randrange(lo, field.q))


def random_poly(rng: random.Random, field: FiniteField, n: int, allowed: list[int],
                max_terms: int = 3, max_exp: int | None = None) -> Poly:
    """Sparse polynomial in the 1-based variables ``allowed``.

    Exponents may exceed q - 1 so that formal and functional forms differ.
    """
    if max_exp is None:
        max_exp = min(field.q + 1, 5)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * n
        for v in allowed:
            exps[v - 1] = rng.randint(0, max_exp)
        terms[tuple(exps)] = random_element(rng, field, nonzero=True)
    return Poly.from_dict(field, n, terms)


def random_elementary(rng, field, n) -> ElementaryAut:
    i = rng.randint(1, n)
    others = [v for v in range(1, n + 1) if v != i]
    return ElementaryAut(field, n, i, random_poly(rng, field, n, others))


def random_linear_factor(rng, field, n):
    kinds = ["scale"] + (["swap", "rowadd"] if n >= 2 else [])
    kind = rng.choice(kinds)
    if kind == "scale":
        return Scale(rng.randint(1, n), random_element(rng, field, nonzero=True))
    i, j = rng.sample(range(1, n + 1), 2)
    if kind == "swap":
        return Swap(i, j)
    return RowAdd(i, j, random_element(rng, field, nonzero=True))


def random_invertible_matrix(rng, field, n) -> linalg.Matrix:
    while True:
        m = tuple(tuple(random_element(rng, field) for _ in range(n)) for _ in range(n))
        if not linalg.determinant(m).is_zero:
            return m


def random_affine(rng, field, n, translate: bool = True) -> AffineAut:
    m = random_invertible_matrix(rng, field, n)
    if translate:
        b = tuple(random_element(rng, field) for _ in range(n))
    else:
        b = (field.zero,) * n
    return AffineAut(field, n, m, b)


def random_triangular(rng, field, n, strict: bool = False) -> TriangularAut:
    diag = tuple(field.one if strict else random_element(rng, field, nonzero=True) for _ in range(n))
    tails = tuple(random_poly(rng, field, n, list(range(k + 1, n + 1))) for k in range(1, n + 1))
    return TriangularAut(field, n, diag, tails)


def random_tame_word(rng, field, n, length: int | None = None, max_length: int = 5,
                     mix=("affine", "triangular", "elementary")) -> TameWord:
    if length is None:
        length = rng.randint(0, max_length)
    factors = []
    for _ in range(length):
        kind = rng.choice(mix)
        if kind == "affine":
            factors.append(random_affine(rng, field, n))
        elif kind == "triangular":
            factors.append(random_triangular(rng, field, n))
        elif kind == "elementary":
            factors.append(random_elementary(rng, field, n))
        elif kind == "linear":
            factors.append(random_linear_factor(rng, field, n))
        else:
            raise ValueError(f"unknown factor kind {kind!r}")
    return TameWord(field, n, tuple(factors))


def random_instance(rng, family: str, field: FiniteField, n: int):
    """One instance of ``family``; linear factors come back as a one-factor TameWord."""
    if family == "elementary":
        return random_elementary(rng, field, n)
    if family == "linear":
        return TameWord(field, n, (random_linear_factor(rng, field, n),))
    if family == "affine":
        return random_affine(rng, field, n)
    if family == "triangular":
        return random_triangular(rng, field, n)
    if family == "strict":
        return random_triangular(rng, field, n, strict=True)
    if family == "tame":
        return random_tame_word(rng, field, n)
    raise ValueError(f"unknown family {family!r}")
