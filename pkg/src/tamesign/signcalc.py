"""Closed-form parity of the point permutation of a tame automorphism.

Every function here works symbolically from the automorphism's data; none of
them enumerates F_q^n.  :mod:`tamesign.perm` provides the brute-force oracle
the test-suite compares against.

Over odd q the sign of a scaling x_i -> c x_i is the parity of the discrete
logarithm of c (equivalently, -1 iff c is a non-square), not the parity of its
multiplicative order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

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
from .errors import ArityTooSmall, NotStrict, SingularMatrix, ZeroElement
from .gf import FieldElement, FiniteField, is_square
from .mvpoly import MultivariatePolynomial as Poly, count_full_support_monomials


def _kind(q: int) -> str:
    if q % 2:
        return "odd"
    return "two" if q == 2 else "even"


def indicator_theta(c: FieldElement) -> int:
    return 0 if c.is_zero else 1


def delta(x: int) -> int:
    return 0 if x == 0 else 1


def monomial_parity_count(c: FieldElement, exponents: Sequence[int], field: FiniteField) -> int:
    """Transposition count of x_i -> x_i + c * prod_{j != i} x_j^{e_j}.

    ``exponents`` lists e_j for the n - 1 variables other than the target.
    The permutation splits into theta(c) * prod (q - delta(e_j)) nontrivial
    fibres, each a product of p^(m-1) disjoint p-cycles.
    """
    p, m, q = field.p, field.m, field.q
    count = indicator_theta(c) * p ** (m - 1) * (p - 1)
    for e in exponents:
        count *= q - delta(e)
    return count


def sign_elementary(E: ElementaryAut) -> int:
    if _kind(E.field.q) != "two":
        return 1
    return -1 if count_full_support_monomials(E.a, E.i) % 2 else 1


def sign_swap(field: FiniteField, n: int) -> int:
    if n < 2:
        raise ArityTooSmall("a coordinate swap needs n >= 2")
    q = field.q
    kind = _kind(q)
    if kind == "even":
        return 1
    if kind == "two":
        return -1 if n == 2 else 1
    return -1 if ((q - 1) // 2) % 2 else 1


def sign_scale(c: FieldElement) -> int:
    if c.is_zero:
        raise ZeroElement("scale constant must be nonzero")
    if c.field.q % 2 == 0:
        return 1
    return 1 if is_square(c) else -1


def sign_rowadd(factor: RowAdd, field: FiniteField, n: int) -> int:
    """X_i -> X_i + c X_j is elementary; its sign is odd only for q = 2, n = 2."""
    if n < 2:
        raise ArityTooSmall("a row addition needs n >= 2")
    return -1 if field.q == 2 and n == 2 else 1


def sign_linear_factor(g, field: FiniteField, n: int) -> int:
    if isinstance(g, Swap):
        return sign_swap(field, n)
    if isinstance(g, Scale):
        return sign_scale(g.c)
    if isinstance(g, RowAdd):
        return sign_rowadd(g, field, n)
    raise TypeError(f"not a linear factor: {g!r}")


# -- decomposition of GL_n into elementary matrices ---------------------------


@dataclass(frozen=True)
class DecompositionSummary:
    factors: tuple = ()
    n_swap: int = 0
    n_scale: int = 0
    n_rowadd: int = 0
    scale_constants: tuple[FieldElement, ...] = dc_field(default=())

    @classmethod
    def of(cls, factors: Sequence) -> "DecompositionSummary":
        factors = tuple(factors)
        scales = tuple(g.c for g in factors if isinstance(g, Scale))
        return cls(
            factors=factors,
            n_swap=sum(isinstance(g, Swap) for g in factors),
            n_scale=len(scales),
            n_rowadd=sum(isinstance(g, RowAdd) for g in factors),
            scale_constants=scales,
        )

    def __len__(self):
        return len(self.factors)


def determinant(matrix: linalg.Matrix) -> FieldElement:
    return linalg.determinant(matrix)


def decompose_linear(matrix: linalg.Matrix) -> DecompositionSummary:
    """Factor an invertible matrix as M = F_1 F_2 ... F_k (outermost first).

    Gaussian elimination reduces M to the identity with row operations
    E_k ... E_1 M = I, so M = E_1^{-1} ... E_k^{-1}.
    """
    n = len(matrix)
    field = matrix[0][0].field
    rows = [list(r) for r in matrix]
    ops = []  # elimination steps E_1, E_2, ... in application order
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero), None)
        if pivot is None:
            raise SingularMatrix("matrix is not invertible")
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            ops.append(Swap(col + 1, pivot + 1))
        c = rows[col][col]
        if c != field.one:
            inv = c.inverse()
            rows[col] = [x * inv for x in rows[col]]
            ops.append(Scale(col + 1, inv))
        for r in range(n):
            if r != col and not rows[r][col].is_zero:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
                ops.append(RowAdd(r + 1, col + 1, -f))
    return DecompositionSummary.of(g.inverse() for g in ops)


def product_of_factors(factors: Sequence, field: FiniteField, n: int) -> linalg.Matrix:
    result = linalg.identity(field, n)
    for g in factors:
        result = linalg.matmul(result, g.matrix(field, n))
    return result


def sign_of_factor_list(factors: Sequence, field: FiniteField, n: int) -> int:
    s = 1
    for g in factors:
        s *= sign_linear_factor(g, field, n)
    return s


def sign_affine_by_cases(summary: DecompositionSummary, field: FiniteField, n: int) -> int:
    """The case split for a linear map, read off a decomposition's counts."""
    q = field.q
    kind = _kind(q)
    if kind == "even":
        return 1
    if kind == "two":
        return (-1) ** (summary.n_swap + summary.n_rowadd) if n == 2 else 1
    nonsquares = sum(not is_square(c) for c in summary.scale_constants)
    return (-1) ** (nonsquares + (q - 1) // 2 * summary.n_swap)


def sign_translation(field: FiniteField, n: int, b: Sequence[FieldElement]) -> int:
    """Sign of x -> x + b, as a product of constant elementary maps.

    Only odd when q = 2 and n = 1.
    """
    s = 1
    for i, bi in enumerate(b, start=1):
        if not bi.is_zero:
            s *= sign_elementary(ElementaryAut(field, n, i, Poly.constant(field, n, bi)))
    return s


def sign_affine(A: AffineAut) -> int:
    summary = decompose_linear(A.matrix)
    return sign_of_factor_list(summary.factors, A.field, A.n) * sign_translation(
        A.field, A.n, A.translation
    )


def affine_breakdown(A: AffineAut) -> list[dict]:
    summary = decompose_linear(A.matrix)
    out = [
        {"kind": type(g).__name__, "sign": sign_linear_factor(g, A.field, A.n)}
        for g in summary.factors
    ]
    if any(not x.is_zero for x in A.translation):
        out.append({"kind": "Translation", "sign": sign_translation(A.field, A.n, A.translation)})
    return out


def sign_affine_by_determinant(A: AffineAut) -> int:
    """Odd q only: +1 iff det is a square (times the translation sign)."""
    if A.field.q % 2 == 0:
        raise ValueError("determinant law applies to odd q")
    return (1 if is_square(A.det) else -1) * sign_translation(A.field, A.n, A.translation)


def sign_triangular(J: TriangularAut) -> int:
    kind = _kind(J.field.q)
    if kind == "even":
        return 1
    if kind == "odd":
        s = 1
        for a in J.diag:
            s *= sign_scale(a)
        return s
    return -1 if count_full_support_monomials(J.tails[0], 1) % 2 else 1


def sign_strictly_triangular(J: TriangularAut) -> int:
    if not J.is_strict:
        raise NotStrict("every diagonal entry must be 1")
    if _kind(J.field.q) != "two":
        return 1
    return -1 if count_full_support_monomials(J.tails[0], 1) % 2 else 1


def sign_factor(g, field: FiniteField, n: int) -> int:
    if isinstance(g, AffineAut):
        return sign_affine(g)
    if isinstance(g, TriangularAut):
        return sign_triangular(g)
    if isinstance(g, ElementaryAut):
        return sign_elementary(g)
    return sign_linear_factor(g, field, n)


def word_breakdown(w: TameWord) -> list[dict]:
    return [{"kind": type(g).__name__, "sign": sign_factor(g, w.field, w.n)} for g in w.factors]


def sign_tame_word(w: TameWord) -> int:
    s = 1
    for g in w.factors:
        s *= sign_factor(g, w.field, w.n)
    return s


def formula_sign(x) -> int:
    """Dispatch on the automorphism family."""
    if isinstance(x, TameWord):
        return sign_tame_word(x)
    if isinstance(x, (AffineAut, TriangularAut, ElementaryAut)):
        return sign_factor(x, x.field, x.n)
    raise TypeError(f"no sign formula for {type(x).__name__}")
