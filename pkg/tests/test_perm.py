import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import fields, seeded
from tamesign.automorphism import ElementaryAut, PolyMap, TameWord
from tamesign.errors import BudgetExceeded, NotBijective, RankOutOfRange, SizeMismatch
from tamesign.gf import field_of_order
from tamesign.mvpoly import MultivariatePolynomial as Poly
from tamesign.perm import (
    Permutation,
    compose_permutations,
    count_cycles,
    induced_permutation,
    inversion_sign,
    permutation_sign,
    point_rank,
    point_unrank,
)
from tamesign.sampling import random_tame_word


def X(field, n, i, k=1):
    return Poly.var(field, n, i, k)


def test_point_rank_examples():
    f3 = field_of_order(3)
    assert point_rank((f3(2), f3(1))) == 5  # 2 + 1 * 3
    assert point_unrank(f3, 2, 5) == (f3(2), f3(1))
    f4 = field_of_order(4)
    assert point_rank((f4.t, f4.one)) == 2 + 1 * 4
    with pytest.raises(RankOutOfRange):
        point_unrank(f3, 2, 9)


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (4, 2), (5, 1)])
def test_point_rank_bijection(q, n):
    f = field_of_order(q)
    pts = [point_unrank(f, n, r) for r in range(q**n)]
    assert len(set(pts)) == q**n
    assert [point_rank(p) for p in pts] == list(range(q**n))


def test_induced_elementary_swaps_two_points(F2):
    # X1 -> X1 + X2 over F_2^2 exchanges (0,1) and (1,1), ranks 2 and 3
    sigma = induced_permutation(ElementaryAut(F2, 2, 1, X(F2, 2, 2)))
    assert sigma.images.tolist() == [0, 1, 3, 2]
    assert sigma.cycles() == [(2, 3)]
    assert permutation_sign(sigma) == -1


def test_not_bijective_witness(F2):
    F = PolyMap(F2, 2, (X(F2, 2, 1) * X(F2, 2, 2), X(F2, 2, 2)))
    with pytest.raises(NotBijective) as info:
        induced_permutation(F)
    e = info.value
    assert e.first != e.second
    assert F(e.first) == F(e.second) == e.image


def test_budget(F2):
    F = PolyMap.identity(F2, 5)
    with pytest.raises(BudgetExceeded):
        induced_permutation(F, budget=31)
    assert induced_permutation(F, budget=32).size == 32


def test_sign_examples():
    assert permutation_sign(Permutation.identity(5)) == 1
    assert permutation_sign(Permutation([1, 0, 2])) == -1
    assert permutation_sign(Permutation([1, 2, 0])) == 1
    assert permutation_sign(Permutation([1, 2, 3, 0])) == -1
    assert count_cycles([1, 0, 2]) == 2


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose_permutations(Permutation.identity(2), Permutation.identity(3))


def test_all_permutations_of_four():
    # cycle parity against inversion parity on every element of S_4
    for p in itertools.permutations(range(4)):
        sigma = Permutation(list(p))
        assert permutation_sign(sigma) == inversion_sign(sigma)
    signs = [permutation_sign(Permutation(list(p))) for p in itertools.permutations(range(4))]
    assert signs.count(1) == signs.count(-1) == 12


@given(st.permutations(list(range(40))))
def test_cycle_parity_equals_inversion_parity(p):
    sigma = Permutation(p)
    assert sigma.is_valid()
    assert permutation_sign(sigma) == inversion_sign(sigma)


@given(st.permutations(list(range(25))), st.permutations(list(range(25))))
def test_sign_is_multiplicative(a, b):
    s, t = Permutation(a), Permutation(b)
    st_ = compose_permutations(s, t)
    assert permutation_sign(st_) == permutation_sign(s) * permutation_sign(t)


@given(fields(orders=(2, 3, 4, 5)), st.integers(1, 2), seeded())
def test_induced_permutation_is_a_homomorphism(field, n, rng):
    F = random_tame_word(rng, field, n, max_length=3)
    G = random_tame_word(rng, field, n, max_length=3)
    FG = TameWord(field, n, F.factors + G.factors)
    pf, pg, pfg = (induced_permutation(x) for x in (F, G, FG))
    assert pfg == compose_permutations(pf, pg)
    assert permutation_sign(pfg) == permutation_sign(pf) * permutation_sign(pg)


@given(fields(), st.integers(1, 3), seeded())
def test_images_match_pointwise_evaluation(field, n, rng):
    w = random_tame_word(rng, field, n, max_length=3)
    sigma = induced_permutation(w)
    assert sigma.is_valid()
    for _ in range(5):
        r = rng.randrange(field.q**n)
        assert sigma[r] == point_rank(w(point_unrank(field, n, r)))


def test_cycles_cover_moved_points():
    sigma = Permutation(np.array([2, 0, 1, 3, 5, 4]))
    cyc = sigma.cycles()
    assert sorted(len(c) for c in cyc) == [2, 3]
    assert len(sigma.cycles(include_fixed=True)) == 3
