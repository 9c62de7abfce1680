import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fields, polys
from tamesign.errors import ArityMismatch, FieldMismatch, VariableUsed
from tamesign.gf import field_of_order
from tamesign.mvpoly import (
    MultivariatePolynomial as Poly,
    count_full_support_monomials,
    functional_reduce,
    poly_arith,
)
from tamesign.perm import point_unrank


def X(field, n, i, k=1):
    return Poly.var(field, n, i, k)


def all_points(field, n):
    return [point_unrank(field, n, r) for r in range(field.q**n)]


def test_canonical_order_and_collection(F5):
    f = Poly.from_terms(F5, 2, [((0, 1), 2), ((1, 1), 1), ((0, 1), 3), ((2, 0), 1)])
    # X2 terms cancel (2 + 3 = 0 mod 5); degree-2 terms ordered X1^2 before X1*X2
    assert [e for e, _ in f.terms] == [(2, 0), (1, 1)]
    assert f == X(F5, 2, 1, 2) + X(F5, 2, 1) * X(F5, 2, 2)


def test_degree_and_inspection(F5):
    f = X(F5, 3, 1, 2) * X(F5, 3, 3) + 4
    assert f.degree == 3 and f.degree_in(1) == 2 and f.degree_in(2) == 0
    assert f.variables() == {1, 3}
    assert f.constant_term() == F5(4)
    assert Poly.zero(F5, 3).degree == -1
    assert Poly.constant(F5, 3, 2).is_constant()


def test_arity_and_field_checks(F5):
    with pytest.raises(ArityMismatch):
        Poly.from_dict(F5, 2, {(1, 0, 0): 1})
    with pytest.raises(ArityMismatch):
        X(F5, 2, 3)
    with pytest.raises(ArityMismatch):
        X(F5, 2, 1) + X(F5, 3, 1)
    with pytest.raises(FieldMismatch):
        X(F5, 2, 1) + X(field_of_order(7), 2, 1)
    with pytest.raises(ArityMismatch):
        X(F5, 2, 1).evaluate([1, 2, 3])


def test_formal_exponents_kept(F2):
    # X1^2 and X1 agree as functions over F_2 but not as polynomials
    a, b = X(F2, 1, 1, 2), X(F2, 1, 1)
    assert a != b
    assert all(a.evaluate(p) == b.evaluate(p) for p in all_points(F2, 1))
    assert functional_reduce(a) == b


def test_evaluate_example(F5):
    f = 3 * X(F5, 2, 1) * X(F5, 2, 2, 2) + 1
    # 3 * 2 * 3^2 + 1 = 55 = 0 mod 5
    assert f.evaluate([2, 3]) == F5(0)


def test_full_support_count_examples(F4):
    n = 3
    x2, x3 = X(F4, n, 2), X(F4, n, 3)
    assert count_full_support_monomials(x2 * x3 + x2, 1) == 1
    alpha, beta = F4.t, F4.t + 1
    f = x2 * x3 * alpha + X(F4, n, 2, 2) * x3 * beta
    assert count_full_support_monomials(f, 1) == 2
    assert count_full_support_monomials(Poly.constant(F4, n, 1), 1) == 0
    with pytest.raises(VariableUsed):
        count_full_support_monomials(X(F4, n, 1) * x2, 1)
    assert count_full_support_monomials(X(F4, n, 1) * x2 * x3) == 1


def test_poly_arith_dispatch(F5):
    f, g = X(F5, 2, 1), X(F5, 2, 2)
    assert poly_arith(f, g, "add") == f + g
    assert poly_arith(f, g, "mul") == f * g
    assert poly_arith(f, F5(2), "scalar_mul") == f * 2


@st.composite
def poly_triples(draw):
    field = draw(fields())
    n = draw(st.integers(1, 3))
    return field, n, draw(polys(field, n)), draw(polys(field, n)), draw(polys(field, n))


@given(poly_triples())
def test_ring_axioms(data):
    field, n, f, g, h = data
    zero, one = Poly.zero(field, n), Poly.constant(field, n, 1)
    assert f + g == g + f and f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + zero == f and f * one == f and f * zero == zero
    assert f - f == zero and f + (-f) == zero
    assert f**2 == f * f and f**0 == one


@given(poly_triples(), st.data())
def test_evaluation_is_a_homomorphism(data, draw):
    field, n, f, g, _ = data
    point = [field.unrank(draw.draw(st.integers(0, field.q - 1))) for _ in range(n)]
    assert (f + g).evaluate(point) == f.evaluate(point) + g.evaluate(point)
    assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)


@given(poly_triples())
def test_vectorised_evaluation_matches_scalar(data):
    field, n, f, _, _ = data
    import numpy as np

    pts = all_points(field, n)[:200]
    cols = [np.array([p[j].rank for p in pts]) for j in range(n)]
    got = f.evaluate_ranks(cols)
    assert [int(r) for r in got] == [f.evaluate(p).rank for p in pts]


@given(st.data())
def test_substitution_coherent_with_evaluation(draw):
    field = draw.draw(fields())
    n = draw.draw(st.integers(1, 3))
    f = draw.draw(polys(field, n, max_exp=3))
    images = [draw.draw(polys(field, n, max_terms=2, max_exp=2)) for _ in range(n)]
    fs = f.substitute(images)
    point = [field.unrank(draw.draw(st.integers(0, field.q - 1))) for _ in range(n)]
    inner = [g.evaluate(point) for g in images]
    assert fs.evaluate(point) == f.evaluate(inner)


@given(st.data())
def test_functional_reduce_preserves_function(draw):
    field = draw.draw(fields())
    n = draw.draw(st.integers(1, 2))
    f = draw.draw(polys(field, n, max_exp=12))
    r = functional_reduce(f)
    assert all(0 <= e <= field.q - 1 for exps, _ in r.terms for e in exps)
    for p in all_points(field, n)[:100]:
        assert r.evaluate(p) == f.evaluate(p)


@pytest.mark.parametrize("q", [2, 4])
def test_full_support_parity_stable_under_reduction(q):
    """Reducing exponents never changes whether a monomial has full support."""
    field = field_of_order(q)
    n = 3
    for exps in itertools.product(range(0, 2 * q + 1), repeat=2):
        f = Poly.monomial(field, n, (0,) + exps)
        assert count_full_support_monomials(f, 1) == count_full_support_monomials(functional_reduce(f), 1)


@given(st.data())
def test_full_support_parity_stable_over_f2(draw):
    # over F_2 colliding terms cancel in pairs, so the parity survives reduction
    field = field_of_order(2)
    f = draw.draw(polys(field, 3, allowed=[2, 3], max_terms=6, max_exp=9))
    a = count_full_support_monomials(f, 1) % 2
    assert a == count_full_support_monomials(functional_reduce(f), 1) % 2


@given(st.data())
def test_functional_reduce_idempotent_f4(draw):
    field = field_of_order(4)
    f = draw.draw(polys(field, 3, allowed=[2, 3], max_exp=9))
    r = functional_reduce(f)
    assert functional_reduce(r) == r
