"""Parity of the point permutations that tame polynomial automorphisms induce on F_q^n."""

from .automorphism import (
    AffineAut,
    ElementaryAut,
    PolyMap,
    RowAdd,
    Scale,
    Swap,
    TameWord,
    TriangularAut,
    compose,
    inverse,
    make_affine,
    make_elementary,
    make_triangular,
    to_polymap,
)
from .gf import FieldElement, FiniteField, field_of_order, make_field
from .mvpoly import MultivariatePolynomial, count_full_support_monomials
from .perm import Permutation, induced_permutation, oracle_sign, permutation_sign
from .signcalc import (
    decompose_linear,
    formula_sign,
    sign_affine,
    sign_elementary,
    sign_rowadd,
    sign_scale,
    sign_strictly_triangular,
    sign_swap,
    sign_tame_word,
    sign_triangular,
)

__version__ = "0.1.0"
