import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tamesign.gf import field_of_order
from tamesign.mvpoly import MultivariatePolynomial as Poly

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ORDERS = (2, 3, 4, 5, 7, 8, 9)


@st.composite
def fields(draw, orders=ORDERS):
    return field_of_order(draw(st.sampled_from(orders)))


@st.composite
def polys(draw, field, n, max_terms=4, max_exp=4, allowed=None):
    allowed = list(range(1, n + 1)) if allowed is None else allowed
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = [0] * n
        for v in allowed:
            exps[v - 1] = draw(st.integers(0, max_exp))
        terms[tuple(exps)] = field.unrank(draw(st.integers(1, field.q - 1)))
    return Poly.from_dict(field, n, terms)


@st.composite
def seeded(draw):
    """A reproducible stdlib RNG driven by hypothesis."""
    return random.Random(draw(st.integers(0, 2**32 - 1)))


@pytest.fixture
def F2():
    return field_of_order(2)


@pytest.fixture
def F4():
    return field_of_order(4)


@pytest.fixture
def F5():
    return field_of_order(5)
