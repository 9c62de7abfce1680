import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import seeded
from tamesign import signcalc as sc
from tamesign.automorphism import (
    AffineAut,
    ElementaryAut,
    RowAdd,
    Scale,
    Swap,
    TameWord,
    make_affine,
    make_triangular,
)
from tamesign.errors import ArityTooSmall, NotStrict, SingularMatrix, ZeroElement
from tamesign.gf import field_of_order, is_square
from tamesign.linalg import identity
from tamesign.mvpoly import MultivariatePolynomial as Poly
from tamesign.perm import oracle_sign
from tamesign.sampling import (
    random_affine,
    random_elementary,
    random_instance,
    random_invertible_matrix,
    random_triangular,
)

ORDERS = (2, 3, 4, 5, 7, 8, 9)


def X(field, n, i, k=1):
    return Poly.var(field, n, i, k)


def oracle(x, field=None, n=None):
    return oracle_sign(x, field, n, budget=10**5)


# -- closed-form examples ----------------------------------------------------


def test_theta_and_delta(F4):
    assert sc.indicator_theta(F4.zero) == 0
    assert sc.indicator_theta(F4.one) == 1
    assert sc.indicator_theta(F4.t) == 1
    assert sc.delta(0) == 0 and sc.delta(5) == 1


def test_monomial_parity_count_examples():
    f2, f3 = field_of_order(2), field_of_order(3)
    assert sc.monomial_parity_count(f2.one, (1, 1), f2) == 1
    assert sc.monomial_parity_count(f2.zero, (1, 1), f2) == 0
    assert sc.monomial_parity_count(f3.one, (2,), f3) == 4


def test_elementary_examples():
    f9 = field_of_order(9)
    assert sc.sign_elementary(ElementaryAut(f9, 2, 1, X(f9, 2, 2, 3) * f9.t)) == 1
    f2 = field_of_order(2)
    a = X(f2, 3, 2) * X(f2, 3, 3)
    b = X(f2, 3, 2, 2) * X(f2, 3, 3)
    for poly, want in ((a, -1), (b, -1), (a + b, 1)):
        E = ElementaryAut(f2, 3, 1, poly)
        assert sc.sign_elementary(E) == want == oracle(E)


@pytest.mark.parametrize("q,n,want", [(4, 2, 1), (3, 2, -1), (2, 2, -1), (2, 3, 1), (5, 2, 1), (7, 3, -1)])
def test_swap_examples(q, n, want):
    f = field_of_order(q)
    assert sc.sign_swap(f, n) == want == oracle(Swap(1, 2), f, n)


def test_swap_needs_two_variables(F5):
    with pytest.raises(ArityTooSmall):
        sc.sign_swap(F5, 1)


def test_scale_examples(F4, F5):
    assert all(sc.sign_scale(c) == 1 for c in F4.elements()[1:])
    assert sc.sign_scale(F5(2)) == -1 == oracle(Scale(1, F5(2)), F5, 1)
    assert sc.sign_scale(F5(1)) == 1
    with pytest.raises(ZeroElement):
        sc.sign_scale(F5(0))


def test_scale_sign_is_not_order_parity(F5):
    # 2 has multiplicative order 4; (-1)^4 would predict +1
    from tamesign.gf import mult_order

    assert mult_order(F5(2)) == 4
    assert oracle(Scale(1, F5(2)), F5, 1) == -1


def test_rowadd_examples():
    f2, f3, f5 = (field_of_order(q) for q in (2, 3, 5))
    # X1 -> X1 + X2 over F_2^2 is a single transposition, so the sign is odd
    assert sc.sign_rowadd(RowAdd(1, 2, f2.one), f2, 2) == -1 == oracle(RowAdd(1, 2, f2.one), f2, 2)
    assert sc.sign_rowadd(RowAdd(2, 3, f5(4)), f5, 3) == 1 == oracle(RowAdd(2, 3, f5(4)), f5, 3)
    assert sc.sign_rowadd(RowAdd(1, 2, f3(2)), f3, 2) == 1 == oracle(RowAdd(1, 2, f3(2)), f3, 2)
    assert sc.sign_rowadd(RowAdd(1, 2, f2.one), f2, 3) == 1 == oracle(RowAdd(1, 2, f2.one), f2, 3)


def test_decompose_identity(F5):
    s = sc.decompose_linear(identity(F5, 3))
    assert len(s) == 0 and sc.determinant(identity(F5, 3)) == F5(1)


def test_decompose_singular(F5):
    from tamesign.linalg import as_matrix

    with pytest.raises(SingularMatrix):
        sc.decompose_linear(as_matrix(F5, [[1, 2], [2, 4]]))


def _affine_example(field, alpha, beta):
    z, o = field.zero, field.one
    return AffineAut(field, 3, ((z, z, o), (z, o, z), (alpha, z, beta)), (z, z, z))


def test_affine_example():
    for q in (2, 4, 8):
        f = field_of_order(q)
        A = _affine_example(f, f.unrank(q - 1), f.one)
        assert sc.sign_affine(A) == 1 == oracle(A)
    f5 = field_of_order(5)
    A = _affine_example(f5, f5(2), f5(1))
    assert sc.sign_affine(A) == -1 == oracle(A)
    f3 = field_of_order(3)
    A = _affine_example(f3, f3(2), f3(1))
    assert sc.sign_affine(A) == 1 == oracle(A)


def test_affine_example_decomposition_reproduces_matrix():
    f = field_of_order(4)
    A = _affine_example(f, f.t, f.t + 1)
    s = sc.decompose_linear(A.matrix)
    assert sc.product_of_factors(s.factors, f, 3) == A.matrix
    assert s.n_swap + s.n_scale + s.n_rowadd == len(s)
    assert len(s.scale_constants) == s.n_scale


def test_affine_pure_swap_over_f2():
    f2 = field_of_order(2)
    A = make_affine(f2, [[0, 1], [1, 0]])
    assert sc.sign_affine(A) == -1 == oracle(A)


def test_translation_on_one_variable_over_f2():
    f2 = field_of_order(2)
    A = make_affine(f2, [[1]], [1])
    assert sc.sign_affine(A) == -1 == oracle(A)


def test_triangular_examples():
    f4 = field_of_order(4)
    rng = random.Random(3)
    for _ in range(10):
        J = random_triangular(rng, f4, 3)
        assert sc.sign_triangular(J) == 1
    f3 = field_of_order(3)
    J = make_triangular(f3, [1, 2], [X(f3, 2, 2, 2), Poly.constant(f3, 2, 1)])
    assert sc.sign_triangular(J) == -1 == oracle(J)
    f2 = field_of_order(2)
    n = 3
    J = make_triangular(
        f2, [1, 1, 1], [X(f2, n, 2) * X(f2, n, 3), X(f2, n, 3), Poly.constant(f2, n, 1)]
    )
    assert sc.sign_triangular(J) == -1 == oracle(J)


def test_strictly_triangular_examples():
    f7 = field_of_order(7)
    rng = random.Random(5)
    for _ in range(10):
        J = random_triangular(rng, f7, 2, strict=True)
        assert sc.sign_strictly_triangular(J) == 1 == oracle(J)
    f2 = field_of_order(2)
    J = make_triangular(f2, [1, 1], [X(f2, 2, 2), Poly.constant(f2, 2, 1)])
    assert sc.sign_strictly_triangular(J) == -1 == oracle(J)
    ident = make_triangular(f2, [1, 1], [Poly.zero(f2, 2)] * 2)
    assert sc.sign_strictly_triangular(ident) == 1
    with pytest.raises(NotStrict):
        sc.sign_strictly_triangular(make_triangular(f7, [1, 3], [Poly.zero(f7, 2)] * 2))


def test_tame_word_examples():
    f3 = field_of_order(3)
    assert sc.sign_tame_word(TameWord(f3, 2)) == 1
    J = make_triangular(f3, [2, 1], [Poly.zero(f3, 2)] * 2)
    A = make_affine(f3, [[0, 1], [1, 0]])
    w = TameWord(f3, 2, (J, A))
    assert sc.sign_triangular(J) == -1 and sc.sign_affine(A) == -1
    assert sc.sign_tame_word(w) == 1 == oracle(w)


# -- oracle agreement --------------------------------------------------------


@pytest.mark.parametrize("family", ["elementary", "linear", "affine", "triangular", "strict", "tame"])
@pytest.mark.parametrize("q,n", [(q, n) for q in ORDERS for n in (2, 3) if q**n <= 729])
def test_formula_matches_oracle(family, q, n):
    field = field_of_order(q)
    for k in range(15):
        x = random_instance(random.Random(f"sc:{q}:{n}:{family}:{k}"), family, field, n)
        assert sc.formula_sign(x) == oracle(x), (family, q, n, k)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_one_variable_affine_matches_oracle(q):
    field = field_of_order(q)
    for a, b in itertools.product(field.elements()[1:], field.elements()):
        A = AffineAut(field, 1, ((a,),), (b,))
        assert sc.sign_affine(A) == oracle(A)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (4, 2), (2, 4)])
def test_every_monomial_matches_oracle(q, n):
    """(-1)^M against the oracle for every single-monomial elementary map of low degree."""
    field = field_of_order(q)
    for c in field.elements()[1:]:
        for exps in itertools.product(range(q + 1), repeat=n - 1):
            E = ElementaryAut(field, n, 1, Poly.monomial(field, n, (0,) + exps, c))
            M = sc.monomial_parity_count(c, exps, field)
            assert (-1) ** M == oracle(E)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2)])
def test_monomial_count_is_exact_transposition_count(q, n):
    """M equals N - C of the induced permutation, not just its parity."""
    from tamesign.perm import count_cycles, induced_permutation

    field = field_of_order(q)
    for c in field.elements()[1:]:
        for exps in itertools.product(range(q + 1), repeat=n - 1):
            E = ElementaryAut(field, n, 1, Poly.monomial(field, n, (0,) + exps, c))
            sigma = induced_permutation(E)
            assert sc.monomial_parity_count(c, exps, field) == sigma.size - count_cycles(sigma.images)


# -- properties ----------------------------------------------------------------


@given(st.sampled_from([2, 3, 5, 7]), st.integers(2, 3), seeded())
def test_decomposition_product_and_independence(q, n, rng):
    field = field_of_order(q)
    M = random_invertible_matrix(rng, field, n)
    s = sc.decompose_linear(M)
    assert sc.product_of_factors(s.factors, field, n) == M
    base = sc.sign_of_factor_list(s.factors, field, n)
    factors = list(s.factors)
    i, j = rng.sample(range(1, n + 1), 2)
    c = field.unrank(rng.randrange(1, q))
    pos = rng.randrange(len(factors) + 1)
    padded = factors[:pos] + [Swap(i, j), Swap(i, j)] + factors[pos:]
    pos = rng.randrange(len(padded) + 1)
    padded = padded[:pos] + [Scale(i, c), Scale(i, c.inverse())] + padded[pos:]
    assert sc.product_of_factors(padded, field, n) == M
    assert sc.sign_of_factor_list(padded, field, n) == base == oracle(AffineAut(field, n, M, (field.zero,) * n))


@given(st.sampled_from([3, 5, 7, 9]), st.integers(1, 3), seeded())
def test_determinant_law(q, n, rng):
    field = field_of_order(q)
    A = random_affine(rng, field, n)
    want = 1 if is_square(sc.determinant(A.matrix)) else -1
    assert sc.sign_affine(A) == want == sc.sign_affine_by_determinant(A) == oracle(A)


@given(st.sampled_from(ORDERS), st.integers(2, 3), seeded())
def test_translation_irrelevant(q, n, rng):
    field = field_of_order(q)
    A = random_affine(rng, field, n)
    assert sc.sign_affine(A) == sc.sign_affine(A.linear_part)


@given(st.sampled_from(ORDERS), st.integers(2, 3), seeded())
def test_by_cases_matches_factor_product(q, n, rng):
    field = field_of_order(q)
    M = random_invertible_matrix(rng, field, n)
    s = sc.decompose_linear(M)
    assert sc.sign_affine_by_cases(s, field, n) == sc.sign_of_factor_list(s.factors, field, n)


@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.integers(1, 3), seeded())
def test_elementary_even_unless_f2(q, n, rng):
    assert sc.sign_elementary(random_elementary(rng, field_of_order(q), n)) == 1


@given(st.sampled_from([2, 4, 8]), st.integers(1, 3), seeded())
def test_affine_even_in_characteristic_two(q, n, rng):
    if q == 2 and n < 3:
        n = 3
    assert sc.sign_affine(random_affine(rng, field_of_order(q), n)) == 1


def test_breakdowns_multiply_to_sign():
    rng = random.Random(11)
    for q in (2, 3, 5):
        f = field_of_order(q)
        A = random_affine(rng, f, 3)
        parts = sc.affine_breakdown(A)
        prod = 1
        for p in parts:
            prod *= p["sign"]
        assert prod == sc.sign_affine(A)
