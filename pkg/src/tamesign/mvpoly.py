"""Sparse multivariate polynomials over a finite field.

A polynomial in X_1..X_n is a canonical tuple of ``(exponents, coefficient)``
pairs: no zero coefficients, no repeated exponent vectors, sorted in graded
lexicographic order (highest total degree first, ties broken by comparing the
exponent of X_1, then X_2, ...).  Two polynomials are equal iff their term
tuples are equal.  Exponents are kept formally; nothing is reduced modulo
X^q - X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, FieldMismatch, VariableUsed
from .gf import FieldElement, FiniteField

Monomial = tuple[int, ...]


def _grlex_key(exps: Monomial):
    return (-sum(exps), tuple(-e for e in exps))


@dataclass(frozen=True)
class MultivariatePolynomial:
    field: FiniteField
    n: int
    terms: tuple[tuple[Monomial, FieldElement], ...] = ()

    # -- construction -------------------------------------------------------

    @classmethod
    def from_dict(
        cls, field: FiniteField, n: int, terms: Mapping[Monomial, FieldElement | int]
    ) -> "MultivariatePolynomial":
        collected: dict[Monomial, FieldElement] = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ArityMismatch(f"monomial {exps} has {len(exps)} exponents, expected {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = field(c)
            if exps in collected:
                collected[exps] = collected[exps] + c
            else:
                collected[exps] = c
        return cls._canonical(field, n, collected)

    @classmethod
    def from_terms(
        cls, field: FiniteField, n: int, terms: Iterable[tuple[Monomial, FieldElement | int]]
    ) -> "MultivariatePolynomial":
        acc: dict[Monomial, FieldElement] = {}
        for exps, c in terms:
            exps = tuple(exps)
            c = field(c)
            acc[exps] = acc[exps] + c if exps in acc else c
        return cls.from_dict(field, n, acc)

    @classmethod
    def _canonical(cls, field, n, collected):
        items = [(e, c) for e, c in collected.items() if not c.is_zero]
        items.sort(key=lambda ec: _grlex_key(ec[0]))
        return cls(field, n, tuple(items))

    @classmethod
    def zero(cls, field: FiniteField, n: int) -> "MultivariatePolynomial":
        return cls(field, n, ())

    @classmethod
    def constant(cls, field: FiniteField, n: int, c) -> "MultivariatePolynomial":
        c = field(c)
        if c.is_zero:
            return cls(field, n, ())
        return cls(field, n, (((0,) * n, c),))

    @classmethod
    def var(cls, field: FiniteField, n: int, i: int, power: int = 1) -> "MultivariatePolynomial":
        """X_i^power with 1-based index i."""
        if not 1 <= i <= n:
            raise ArityMismatch(f"variable X{i} outside X1..X{n}")
        exps = [0] * n
        exps[i - 1] = power
        return cls(field, n, ((tuple(exps), field.one),))

    @classmethod
    def monomial(cls, field: FiniteField, n: int, exps: Sequence[int], c=1):
        return cls.from_dict(field, n, {tuple(exps): c})

    # -- inspection ---------------------------------------------------------

    def as_dict(self) -> dict[Monomial, FieldElement]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i - 1] for e, _ in self.terms), default=-1)

    def uses_var(self, i: int) -> bool:
        return any(e[i - 1] for e, _ in self.terms)

    def variables(self) -> set[int]:
        return {j + 1 for e, _ in self.terms for j, x in enumerate(e) if x}

    def coefficient(self, exps: Sequence[int]) -> FieldElement:
        for e, c in self.terms:
            if e == tuple(exps):
                return c
        return self.field.zero

    def constant_term(self) -> FieldElement:
        return self.coefficient((0,) * self.n)

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def __str__(self):
        from .cli.grammar import format_poly

        return format_poly(self)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultivariatePolynomial"):
        if other.n != self.n:
            raise ArityMismatch(f"arity {self.n} vs {other.n}")
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def _lift(self, other) -> "MultivariatePolynomial":
        if isinstance(other, MultivariatePolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return MultivariatePolynomial.constant(self.field, self.n, other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._lift(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return MultivariatePolynomial._canonical(self.field, self.n, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultivariatePolynomial(self.field, self.n, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scalar_mul(self, c) -> "MultivariatePolynomial":
        c = self.field(c)
        if c.is_zero:
            return MultivariatePolynomial.zero(self.field, self.n)
        return MultivariatePolynomial(self.field, self.n, tuple((e, c * x) for e, x in self.terms))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scalar_mul(other)
        other = self._lift(other)
        acc: dict[Monomial, FieldElement] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        return MultivariatePolynomial._canonical(self.field, self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultivariatePolynomial.constant(self.field, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- evaluation and substitution -----------------------------------------

    def evaluate(self, point: Sequence[FieldElement | int]) -> FieldElement:
        if len(point) != self.n:
            raise ArityMismatch(f"point of length {len(point)} for arity {self.n}")
        xs = [self.field(x) for x in point]
        total = self.field.zero
        for exps, c in self.terms:
            v = c
            for x, e in zip(xs, exps):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def evaluate_ranks(self, columns: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised evaluation; ``columns[j]`` holds ranks of the X_{j+1} coordinate."""
        if len(columns) != self.n:
            raise ArityMismatch(f"{len(columns)} columns for arity {self.n}")
        f = self.field
        size = len(columns[0]) if columns else 1
        total = np.zeros(size, dtype=np.int64)
        powers: dict[tuple[int, int], np.ndarray] = {}
        for exps, c in self.terms:
            v = None
            for j, e in enumerate(exps):
                if not e:
                    continue
                key = (j, e)
                if key not in powers:
                    powers[key] = f.pow_ranks(columns[j], e)
                v = powers[key] if v is None else f.mul_ranks(v, powers[key])
            if v is None:
                v = np.full(size, c.rank, dtype=np.int64)
            elif c.rank != 1:
                v = f.scale_ranks(c, v)
            total = f.add_ranks(total, v)
        return total

    def substitute(self, images: Sequence["MultivariatePolynomial"]) -> "MultivariatePolynomial":
        """Formal substitution X_i -> images[i-1]."""
        if len(images) != self.n:
            raise ArityMismatch(f"{len(images)} images for arity {self.n}")
        if not images:
            raise ArityMismatch("cannot substitute into a 0-variable polynomial")
        target_n = images[0].n
        for g in images:
            if g.n != target_n:
                raise ArityMismatch("images have differing arities")
            if g.field is not self.field and g.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {g.field!r}")
        result = MultivariatePolynomial.zero(self.field, target_n)
        cache: dict[tuple[int, int], MultivariatePolynomial] = {}
        for exps, c in self.terms:
            term = MultivariatePolynomial.constant(self.field, target_n, c)
            for j, e in enumerate(exps):
                if e:
                    if (j, e) not in cache:
                        cache[(j, e)] = images[j] ** e
                    term = term * cache[(j, e)]
            result = result + term
        return result


def count_full_support_monomials(f: MultivariatePolynomial, excluded: int | None = None) -> int:
    """Number of terms of f with exponent >= 1 on every variable other than X_excluded.

    With ``excluded=None`` every one of the n variables must appear.
    """
    if excluded is not None:
        if not 1 <= excluded <= f.n:
            raise ArityMismatch(f"variable X{excluded} outside X1..X{f.n}")
        if f.uses_var(excluded):
            raise VariableUsed(f"polynomial uses the excluded variable X{excluded}")
    skip = -1 if excluded is None else excluded - 1
    return sum(1 for exps, _ in f.terms if all(e >= 1 for j, e in enumerate(exps) if j != skip))


def functional_reduce(f: MultivariatePolynomial) -> MultivariatePolynomial:
    """Reduce each exponent e >= 1 to ((e - 1) mod (q - 1)) + 1 and collect.

    The result induces the same function on F_q^n as f.
    """
    q = f.field.q
    acc: dict[Monomial, FieldElement] = {}
    for exps, c in f.terms:
        r = tuple(((e - 1) % (q - 1)) + 1 if e else 0 for e in exps)
        acc[r] = acc[r] + c if r in acc else c
    return MultivariatePolynomial._canonical(f.field, f.n, acc)


def poly_arith(f: MultivariatePolynomial, g, op: str) -> MultivariatePolynomial:
    """Dispatch ``op`` in {add, sub, mul, scalar_mul, neg}; g is a scalar for scalar_mul."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scalar_mul(g)
    if op == "neg":
        return -f
    raise ValueError(f"unknown op {op!r}")
