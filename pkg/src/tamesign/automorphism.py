"""Polynomial maps and the tame automorphism families.

Composition follows ``(F o G)(x) = F(G(x))``.  A :class:`TameWord` lists its
factors outermost first, so ``TameWord([g1, g2, g3])`` is ``g1 o g2 o g3`` and
``g3`` is applied to a point first.  Variable indices are 1-based throughout.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import linalg
from .errors import (
    ArityMismatch,
    FieldMismatch,
    SingularMatrix,
    TailUsesEarlyVariable,
    VariableUsed,
    ZeroDiagonal,
    ZeroElement,
)
from .gf import FieldElement, FiniteField
from .mvpoly import MultivariatePolynomial as Poly


def _same_field(a: FiniteField, b: FiniteField):
    if a is not b and a != b:
        raise FieldMismatch(f"{a!r} vs {b!r}")


@dataclass(frozen=True)
class PolyMap:
    field: FiniteField
    n: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.components) != self.n:
            raise ArityMismatch(f"{len(self.components)} components for arity {self.n}")
        for f in self.components:
            _same_field(f.field, self.field)
            if f.n != self.n:
                raise ArityMismatch(f"component of arity {f.n} in a map of arity {self.n}")

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> "PolyMap":
        return cls(field, n, tuple(Poly.var(field, n, i) for i in range(1, n + 1)))

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.field, self.n)

    def __call__(self, point: Sequence) -> tuple[FieldElement, ...]:
        return tuple(f.evaluate(point) for f in self.components)

    def evaluate_ranks(self, columns: Sequence[np.ndarray]) -> list[np.ndarray]:
        return [f.evaluate_ranks(columns) for f in self.components]

    def compose(self, other: "PolyMap") -> "PolyMap":
        return compose(self, other)

    def to_polymap(self) -> "PolyMap":
        return self

    @property
    def degree(self) -> int:
        return max((f.degree for f in self.components), default=-1)

    def __str__(self):
        from .cli.grammar import format_map

        return format_map(self)


def compose(F: PolyMap, G: PolyMap) -> PolyMap:
    """The polynomial map x -> F(G(x))."""
    _same_field(F.field, G.field)
    if F.n != G.n:
        raise ArityMismatch(f"arity {F.n} vs {G.n}")
    return PolyMap(F.field, F.n, tuple(f.substitute(G.components) for f in F.components))


class _Evaluable:
    """Mixin: pointwise evaluation through the cached explicit map."""

    @functools.cached_property
    def polymap(self) -> PolyMap:
        return self.to_polymap()

    def __call__(self, point):
        return self.polymap(point)

    def evaluate_ranks(self, columns):
        return self.polymap.evaluate_ranks(columns)


@dataclass(frozen=True)
class ElementaryAut(_Evaluable):
    """(X_1, ..., X_i + a, ..., X_n) with a free of X_i."""

    field: FiniteField
    n: int
    i: int
    a: Poly

    def __post_init__(self):
        if not 1 <= self.i <= self.n:
            raise ArityMismatch(f"coordinate {self.i} outside 1..{self.n}")
        _same_field(self.a.field, self.field)
        if self.a.n != self.n:
            raise ArityMismatch(f"polynomial arity {self.a.n} vs {self.n}")
        if self.a.uses_var(self.i):
            raise VariableUsed(f"elementary polynomial uses X{self.i}")

    def to_polymap(self) -> PolyMap:
        comps = [Poly.var(self.field, self.n, k) for k in range(1, self.n + 1)]
        comps[self.i - 1] = comps[self.i - 1] + self.a
        return PolyMap(self.field, self.n, tuple(comps))

    def inverse(self) -> "ElementaryAut":
        return ElementaryAut(self.field, self.n, self.i, -self.a)


# -- linear factors T_{i,j}, D_i(c), R_{i,j}(c) ------------------------------


@dataclass(frozen=True)
class Swap:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("Swap needs two distinct indices")

    def check(self, field: FiniteField, n: int):
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise ArityMismatch(f"{self} outside 1..{n}")

    def matrix(self, field: FiniteField, n: int) -> linalg.Matrix:
        self.check(field, n)
        rows = [list(r) for r in linalg.identity(field, n)]
        rows[self.i - 1], rows[self.j - 1] = rows[self.j - 1], rows[self.i - 1]
        return tuple(tuple(r) for r in rows)

    def inverse(self) -> "Swap":
        return self


@dataclass(frozen=True)
class Scale:
    i: int
    c: FieldElement

    def __post_init__(self):
        if self.c.is_zero:
            raise ZeroElement("Scale constant must be nonzero")

    def check(self, field: FiniteField, n: int):
        _same_field(self.c.field, field)
        if not 1 <= self.i <= n:
            raise ArityMismatch(f"{self} outside 1..{n}")

    def matrix(self, field: FiniteField, n: int) -> linalg.Matrix:
        self.check(field, n)
        rows = [list(r) for r in linalg.identity(field, n)]
        rows[self.i - 1][self.i - 1] = self.c
        return tuple(tuple(r) for r in rows)

    def inverse(self) -> "Scale":
        return Scale(self.i, self.c.inverse())


@dataclass(frozen=True)
class RowAdd:
    """X_i -> X_i + c X_j."""

    i: int
    j: int
    c: FieldElement

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("RowAdd needs two distinct indices")
        if self.c.is_zero:
            raise ZeroElement("RowAdd constant must be nonzero")

    def check(self, field: FiniteField, n: int):
        _same_field(self.c.field, field)
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise ArityMismatch(f"{self} outside 1..{n}")

    def matrix(self, field: FiniteField, n: int) -> linalg.Matrix:
        self.check(field, n)
        rows = [list(r) for r in linalg.identity(field, n)]
        rows[self.i - 1][self.j - 1] = self.c
        return tuple(tuple(r) for r in rows)

    def inverse(self) -> "RowAdd":
        return RowAdd(self.i, self.j, -self.c)


LinearFactor = Union[Swap, Scale, RowAdd]


def linear_map(field: FiniteField, matrix: linalg.Matrix, translation=None) -> PolyMap:
    n = len(matrix)
    comps = []
    for k, row in enumerate(matrix):
        terms = {}
        for j, a in enumerate(row):
            if not a.is_zero:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = a
        if translation is not None and not translation[k].is_zero:
            terms[(0,) * n] = translation[k]
        comps.append(Poly.from_dict(field, n, terms))
    return PolyMap(field, n, tuple(comps))


@dataclass(frozen=True)
class AffineAut(_Evaluable):
    """x -> M x + b with M invertible."""

    field: FiniteField
    n: int
    matrix: linalg.Matrix
    translation: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.matrix) != self.n or any(len(r) != self.n for r in self.matrix):
            raise ArityMismatch(f"matrix is not {self.n}x{self.n}")
        if len(self.translation) != self.n:
            raise ArityMismatch(f"translation has length {len(self.translation)}")
        for r in self.matrix:
            for x in r:
                _same_field(x.field, self.field)
        det = linalg.determinant(self.matrix)
        if det.is_zero:
            raise SingularMatrix("affine automorphism needs an invertible matrix")
        object.__setattr__(self, "det", det)

    def to_polymap(self) -> PolyMap:
        return linear_map(self.field, self.matrix, self.translation)

    @property
    def linear_part(self) -> "AffineAut":
        return AffineAut(self.field, self.n, self.matrix, (self.field.zero,) * self.n)

    def inverse(self) -> "AffineAut":
        minv = linalg.inverse(self.matrix)
        b = linalg.matvec(minv, self.translation)
        return AffineAut(self.field, self.n, minv, tuple(-x for x in b))


@dataclass(frozen=True)
class TriangularAut(_Evaluable):
    """(a_1 X_1 + f_1(X_2..X_n), ..., a_n X_n + f_n) with every a_i nonzero."""

    field: FiniteField
    n: int
    diag: tuple[FieldElement, ...]
    tails: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.diag) != self.n or len(self.tails) != self.n:
            raise ArityMismatch("diag and tails must both have length n")
        for k, (a, f) in enumerate(zip(self.diag, self.tails), start=1):
            _same_field(a.field, self.field)
            _same_field(f.field, self.field)
            if f.n != self.n:
                raise ArityMismatch(f"tail {k} has arity {f.n}")
            if a.is_zero:
                raise ZeroDiagonal(f"diagonal entry a_{k} is zero")
            if any(f.uses_var(v) for v in range(1, k + 1)):
                raise TailUsesEarlyVariable(f"tail f_{k} uses one of X1..X{k}")

    @property
    def is_strict(self) -> bool:
        return all(a == self.field.one for a in self.diag)

    def to_polymap(self) -> PolyMap:
        comps = tuple(
            Poly.var(self.field, self.n, k).scalar_mul(a) + f
            for k, (a, f) in enumerate(zip(self.diag, self.tails), start=1)
        )
        return PolyMap(self.field, self.n, comps)

    def inverse(self) -> "TriangularAut":
        # back-substitution: G_k = a_k^{-1} (X_k - f_k(G_{k+1}, ..., G_n))
        n, field = self.n, self.field
        xs = [Poly.var(field, n, k) for k in range(1, n + 1)]
        images = list(xs)
        inv_diag = [None] * n
        inv_tails = [None] * n
        for k in range(n, 0, -1):
            ainv = self.diag[k - 1].inverse()
            tail = -self.tails[k - 1].substitute(images).scalar_mul(ainv)
            inv_diag[k - 1] = ainv
            inv_tails[k - 1] = tail
            images[k - 1] = xs[k - 1].scalar_mul(ainv) + tail
        return TriangularAut(field, n, tuple(inv_diag), tuple(inv_tails))


TameFactor = Union[AffineAut, TriangularAut, ElementaryAut, Swap, Scale, RowAdd]


@dataclass(frozen=True)
class TameWord(_Evaluable):
    """g_1 o g_2 o ... o g_k; an empty factor list is the identity."""

    field: FiniteField
    n: int
    factors: tuple[TameFactor, ...] = ()

    def __post_init__(self):
        for g in self.factors:
            if isinstance(g, (Swap, Scale, RowAdd)):
                g.check(self.field, self.n)
            else:
                _same_field(g.field, self.field)
                if g.n != self.n:
                    raise ArityMismatch(f"factor arity {g.n} vs word arity {self.n}")

    def to_polymap(self) -> PolyMap:
        result = PolyMap.identity(self.field, self.n)
        for g in self.factors:
            result = compose(result, to_polymap(g, self.field, self.n))
        return result

    def evaluate_ranks(self, columns):
        # chain pointwise, innermost factor first; avoids expanding the composite
        cols = list(columns)
        for g in reversed(self.factors):
            cols = _factor_evaluable(g, self.field, self.n).evaluate_ranks(cols)
        return cols

    def __call__(self, point):
        x = tuple(self.field(v) for v in point)
        for g in reversed(self.factors):
            x = _factor_evaluable(g, self.field, self.n)(x)
        return x


@functools.lru_cache(maxsize=4096)
def _linear_factor_map(g, field, n) -> PolyMap:
    return linear_map(field, g.matrix(field, n))


def _factor_evaluable(g, field, n):
    if isinstance(g, (Swap, Scale, RowAdd)):
        return _linear_factor_map(g, field, n)
    return g


def to_polymap(x, field: FiniteField | None = None, n: int | None = None) -> PolyMap:
    """Explicit n-tuple of polynomials; linear factors need ``field`` and ``n``."""
    if isinstance(x, (Swap, Scale, RowAdd)):
        if field is None or n is None:
            raise ValueError("linear factors need field and n")
        return _linear_factor_map(x, field, n)
    if isinstance(x, PolyMap):
        return x
    return x.polymap


def inverse(x):
    if isinstance(x, TameWord):
        return TameWord(x.field, x.n, tuple(inverse(g) for g in reversed(x.factors)))
    return x.inverse()


# -- convenience constructors coercing plain integers -------------------------


def make_elementary(field: FiniteField, n: int, i: int, a: Poly) -> ElementaryAut:
    return ElementaryAut(field, n, i, a)


def make_affine(field: FiniteField, matrix: Sequence[Sequence], b: Sequence | None = None) -> AffineAut:
    m = linalg.as_matrix(field, matrix)
    n = len(m)
    bb = tuple(field(x) for x in b) if b is not None else (field.zero,) * n
    return AffineAut(field, n, m, bb)


def make_triangular(field: FiniteField, diag: Sequence, tails: Sequence[Poly]) -> TriangularAut:
    d = tuple(field(x) for x in diag)
    return TriangularAut(field, len(d), d, tuple(tails))
