"""Finite fields F_q with q = p^m.

Elements are coefficient vectors over F_p (constant term first) reduced modulo
a monic irreducible ``modulus``.  Ranks identify elements with integers in
[0, q): ``rank = sum(coeffs[i] * p**i)``.

Besides scalar arithmetic on :class:`FieldElement`, a field exposes vectorised
helpers operating on numpy arrays of ranks; these drive the exhaustive point
enumeration in :mod:`tamesign.perm`.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    FieldMismatch,
    NotAGenerator,
    NotPrime,
    RankOutOfRange,
    ReducibleModulus,
    UnsupportedField,
    ZeroElement,
)

# q -> (p, m, modulus low-to-high); re-checked for irreducibility on use
BUILTIN_MODULI = {
    4: (2, 2, (1, 1, 1)),  # t^2 + t + 1
    8: (2, 3, (1, 1, 0, 1)),  # t^3 + t + 1
    9: (3, 2, (1, 0, 1)),  # t^2 + 1
    16: (2, 4, (1, 1, 0, 0, 1)),  # t^4 + t + 1
    25: (5, 2, (2, 1, 1)),  # t^2 + t + 2
    27: (3, 3, (1, 2, 0, 1)),  # t^3 + 2t + 1
    32: (2, 5, (1, 0, 1, 0, 0, 1)),  # t^5 + t^2 + 1
    49: (7, 2, (3, 1, 1)),  # t^2 + t + 3
    64: (2, 6, (1, 1, 0, 0, 0, 0, 1)),  # t^6 + t + 1
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m; raises NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, m


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b over F_p."""
    r = list(a)
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % p
        if c:
            shift = k - db
            for j in range(db + 1):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
    return [x % p for x in r[:db]]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive test: no monic divisor of degree 1..deg/2 over F_p."""
    m = len(modulus) - 1
    if m <= 1:
        return m == 1
    # roots first, the cheap and common failure
    for x in range(p):
        if sum(c * pow(x, k, p) for k, c in enumerate(modulus)) % p == 0:
            return False
    for d in range(2, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_rem(modulus, list(low) + [1], p)):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """The field F_p[t]/(modulus); ``modulus`` is None for prime fields."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.m < 1:
            raise UnsupportedField(f"extension degree must be >= 1, got {self.m}")
        if self.m == 1:
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            raise UnsupportedField(f"no modulus given for F_{self.p}^{self.m}")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] % self.p != 1:
            raise ReducibleModulus(f"modulus {mod} is not monic of degree {self.m}")
        mod = tuple(c % self.p for c in mod)
        if not is_irreducible(mod, self.p):
            raise ReducibleModulus(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={self.modulus})"

    @property
    def q(self) -> int:
        return self.p**self.m

    # -- element construction -------------------------------------------

    def __call__(self, value: Union[int, "FieldElement", Sequence[int]]) -> "FieldElement":
        """Coerce an integer (embedded via F_p), coefficient vector or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, (int(value) % self.p,) + (0,) * (self.m - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            raise FieldMismatch(f"coefficient vector {value} longer than m={self.m}")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.m - len(coeffs)))

    @property
    def zero(self) -> "FieldElement":
        return self._unrank_table[0]

    @property
    def one(self) -> "FieldElement":
        return self._unrank_table[1]

    @property
    def t(self) -> "FieldElement":
        """The class of the indeterminate t (only meaningful for m > 1)."""
        if self.m == 1:
            raise UnsupportedField("prime field has no extension generator t")
        return self((0, 1))

    def elements(self) -> tuple["FieldElement", ...]:
        return self._unrank_table

    def unrank(self, r: int) -> "FieldElement":
        if not 0 <= r < self.q:
            raise RankOutOfRange(f"rank {r} outside [0, {self.q})")
        return self._unrank_table[r]

    @functools.cached_property
    def _unrank_table(self) -> tuple["FieldElement", ...]:
        out = []
        for r in range(self.q):
            digits = []
            for _ in range(self.m):
                r, d = divmod(r, self.p)
                digits.append(d)
            out.append(FieldElement(self, tuple(digits)))
        return tuple(out)

    # -- raw coefficient-vector arithmetic --------------------------------

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _mul(self, a, b):
        p = self.p
        if self.m == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return tuple(_poly_rem(prod, self.modulus, p))

    # -- multiplicative structure -----------------------------------------

    @functools.cached_property
    def generator(self) -> "FieldElement":
        return find_generator(self)

    @functools.cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        g = self.generator
        q = self.q
        exp = np.empty(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = self.one
        for k in range(q - 1):
            exp[k] = x.rank
            log[x.rank] = k
            x = x * g
        return exp, log

    # -- vectorised rank arithmetic ---------------------------------------

    def add_ranks(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._digitwise(a, b, 1)

    def sub_ranks(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self._digitwise(a, b, -1)

    def _digitwise(self, a, b, sign):
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(self.m):
            out += ((a // w + sign * (b // w)) % p) * w
            w *= p
        return out

    def mul_ranks(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a * b) % self.p
        exp, log = self._exp_log
        k = (log[a] + log[b]) % (self.q - 1)
        return np.where((a == 0) | (b == 0), 0, exp[k])

    def scale_ranks(self, c: "FieldElement", a: np.ndarray) -> np.ndarray:
        """c * a for a scalar c."""
        if self.m == 1:
            return (c.coeffs[0] * a) % self.p
        if c.is_zero:
            return np.zeros_like(a)
        exp, log = self._exp_log
        k = (log[a] + log[c.rank]) % (self.q - 1)
        return np.where(a == 0, 0, exp[k])

    def pow_ranks(self, a: np.ndarray, e: int) -> np.ndarray:
        if e == 0:
            return np.ones_like(a)
        if e == 1:
            return a
        if self.m == 1:
            # exact for p^e well inside int64 range after each reduction
            out = np.ones_like(a)
            base = a % self.p
            while e:
                if e & 1:
                    out = (out * base) % self.p
                base = (base * base) % self.p
                e >>= 1
            return out
        exp, log = self._exp_log
        k = (log[a] * e) % (self.q - 1)
        return np.where(a == 0, 0, exp[k])


class FieldElement:
    """Immutable element of a :class:`FiniteField`."""

    __slots__ = ("field", "coeffs", "_rank")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)
        r = 0
        for c in reversed(coeffs):
            r = r * field.p + c
        object.__setattr__(self, "_rank", r)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def is_zero(self) -> bool:
        return self._rank == 0

    def __bool__(self):
        return self._rank != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self._rank == other._rank and (
                self.field is other.field or self.field == other.field
            )
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self._rank))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int):
            return self.field(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def _new(self, coeffs):
        return self.field._unrank_table[_rank_of(coeffs, self.field.p)]

    def __add__(self, other):
        if not isinstance(other, (FieldElement, int)):
            return NotImplemented
        o = self._coerce(other)
        return self._new(self.field._add(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (FieldElement, int)):
            return NotImplemented
        o = self._coerce(other)
        return self._new(self.field._sub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        if not isinstance(other, int):
            return NotImplemented
        return self._coerce(other) - self

    def __neg__(self):
        return self._new(tuple((-c) % self.field.p for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, (FieldElement, int)):
            return NotImplemented
        o = self._coerce(other)
        return self._new(self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroElement("inverse of zero")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __repr__(self):
        return f"FieldElement({self}, q={self.field.q})"

    def __str__(self):
        if self.field.m == 1:
            return str(self.coeffs[0])
        parts = []
        for k in range(self.field.m - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = "t" if k == 1 else f"t^{k}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def _rank_of(coeffs, p):
    r = 0
    for c in reversed(coeffs):
        r = r * p + c
    return r


# -- module-level operations ---------------------------------------------


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """Build F_{p^m}; for m > 1 without a modulus the built-in table is used."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m > 1 and modulus is None:
        entry = BUILTIN_MODULI.get(p**m)
        if entry is None or entry[0] != p:
            raise UnsupportedField(f"no built-in modulus for q = {p}^{m}")
        modulus = entry[2]
    return FiniteField(p, m, tuple(modulus) if modulus is not None else None)


def field_of_order(q: int, modulus: tuple[int, ...] | None = None) -> FiniteField:
    p, m = prime_power(q)
    return make_field(p, m, modulus)


def field_arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch ``op`` in {add, sub, mul, neg, inv}; ``b`` is ignored for unary ops."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def element_rank(c: FieldElement) -> int:
    return c.rank


def element_unrank(field: FiniteField, r: int) -> FieldElement:
    return field.unrank(r)


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def mult_order(c: FieldElement) -> int:
    """Smallest x >= 1 with c^x = 1."""
    if c.is_zero:
        raise ZeroElement("zero has no multiplicative order")
    for d in _divisors(c.field.q - 1):
        if c**d == c.field.one:
            return d
    raise AssertionError("unreachable: order divides q - 1")


def find_generator(field: FiniteField) -> FieldElement:
    """Smallest-rank element of multiplicative order q - 1."""
    for c in field.elements()[1:]:
        if mult_order(c) == field.q - 1:
            return c
    raise AssertionError("unreachable: F_q^* is cyclic")


def discrete_log(c: FieldElement, g: FieldElement | None = None) -> int:
    """h in [0, q-1) with g^h = c, by linear scan."""
    if c.is_zero:
        raise ZeroElement("zero has no discrete logarithm")
    field = c.field
    if g is None:
        g = field.generator
    elif g.is_zero or mult_order(g) != field.q - 1:
        raise NotAGenerator(f"{g} does not generate F_{field.q}^*")
    x = field.one
    for h in range(field.q - 1):
        if x == c:
            return h
        x = x * g
    raise AssertionError("unreachable: g generates F_q^*")


def is_square(c: FieldElement) -> bool:
    """Quadratic residuosity of a nonzero element (always true when q is even)."""
    if c.is_zero:
        raise ZeroElement("squareness is only defined on F_q^*")
    q = c.field.q
    if q % 2 == 0:
        return True
    return c ** ((q - 1) // 2) == c.field.one


def iter_elements(field: FiniteField, nonzero: bool = False) -> Iterable[FieldElement]:
    els = field.elements()
    return iter(els[1:] if nonzero else els)
