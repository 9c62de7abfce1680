"""Induced permutations of F_q^n and their signs.

Points are ranked by ``rank(x) = sum(element_rank(x_i) * q**(i-1))``, so X_1 is
the fastest-varying coordinate.  :func:`induced_permutation` evaluates a map at
every point at once with numpy rank arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, NotBijective, RankOutOfRange, SizeMismatch
from .gf import FieldElement, FiniteField

DEFAULT_BUDGET = 10**6


def point_rank(point: Sequence[FieldElement]) -> int:
    if not point:
        return 0
    q = point[0].field.q
    r = 0
    for x in reversed(point):
        r = r * q + x.rank
    return r


def point_unrank(field: FiniteField, n: int, r: int) -> tuple[FieldElement, ...]:
    q = field.q
    if not 0 <= r < q**n:
        raise RankOutOfRange(f"point rank {r} outside [0, {q**n})")
    out = []
    for _ in range(n):
        r, d = divmod(r, q)
        out.append(field.unrank(d))
    return tuple(out)


def point_columns(field: FiniteField, n: int) -> list[np.ndarray]:
    """Coordinate rank arrays for all q^n points in rank order."""
    q = field.q
    ranks = np.arange(q**n, dtype=np.int64)
    return [(ranks // q**i) % q for i in range(n)]


def ranks_from_columns(field: FiniteField, columns: Sequence[np.ndarray]) -> np.ndarray:
    q = field.q
    out = np.zeros(len(columns[0]), dtype=np.int64)
    for col in reversed(columns):
        out = out * q + col
    return out


@dataclass(frozen=True, eq=False)
class Permutation:
    """Image table over [0, N)."""

    images: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.images, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "images", arr)

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(np.arange(size, dtype=np.int64))

    @property
    def size(self) -> int:
        return len(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return permutations_equal(self, other)

    def __hash__(self):
        return hash(self.images.tobytes())

    def __getitem__(self, r):
        return int(self.images[r])

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        img = self.images.tolist()
        seen = [False] * len(img)
        out = []
        for start in range(len(img)):
            if seen[start]:
                continue
            cyc = []
            r = start
            while not seen[r]:
                seen[r] = True
                cyc.append(r)
                r = img[r]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def sign(self) -> int:
        return permutation_sign(self)

    def is_valid(self) -> bool:
        return bool(np.array_equal(np.sort(self.images), np.arange(self.size)))


def count_cycles(images) -> int:
    img = images.tolist() if isinstance(images, np.ndarray) else list(images)
    seen = bytearray(len(img))
    cycles = 0
    for start in range(len(img)):
        if seen[start]:
            continue
        cycles += 1
        r = start
        while not seen[r]:
            seen[r] = 1
            r = img[r]
    return cycles


def permutation_sign(sigma: Permutation) -> int:
    """(-1)^(N - C) with C the number of cycles, fixed points included."""
    return -1 if (sigma.size - count_cycles(sigma.images)) % 2 else 1


def inversion_sign(sigma: Permutation) -> int:
    """Independent parity check by counting inversions; O(N^2)."""
    img = sigma.images.tolist()
    inv = 0
    for a in range(len(img)):
        x = img[a]
        for b in range(a + 1, len(img)):
            if x > img[b]:
                inv += 1
    return -1 if inv % 2 else 1


def compose_permutations(tau: Permutation, sigma: Permutation) -> Permutation:
    """(tau o sigma)[r] = tau[sigma[r]]."""
    if tau.size != sigma.size:
        raise SizeMismatch(f"sizes {tau.size} and {sigma.size}")
    return Permutation(tau.images[sigma.images])


def permutations_equal(sigma: Permutation, tau: Permutation) -> bool:
    if sigma.size != tau.size:
        raise SizeMismatch(f"sizes {sigma.size} and {tau.size}")
    return bool(np.array_equal(sigma.images, tau.images))


def induced_permutation(F, field: FiniteField | None = None, n: int | None = None,
                        budget: int = DEFAULT_BUDGET) -> Permutation:
    """Exhaustively evaluate F on F_q^n.

    F is anything with ``field``, ``n`` and ``evaluate_ranks`` (a PolyMap, a typed
    automorphism or a TameWord); linear factors need ``field`` and ``n`` passed.
    """
    from .automorphism import Scale, Swap, RowAdd, to_polymap

    if isinstance(F, (Swap, Scale, RowAdd)):
        F = to_polymap(F, field, n)
    field, n = F.field, F.n
    size = field.q**n
    if size > budget:
        raise BudgetExceeded(f"q^n = {size} exceeds the enumeration budget {budget}")
    cols = point_columns(field, n)
    images = ranks_from_columns(field, F.evaluate_ranks(cols))
    counts = np.bincount(images, minlength=size)
    if counts.max(initial=0) > 1:
        target = int(np.argmax(counts > 1))
        a, b = (int(r) for r in np.flatnonzero(images == target)[:2])
        pa, pb = point_unrank(field, n, a), point_unrank(field, n, b)
        raise NotBijective(
            f"points {_fmt(pa)} and {_fmt(pb)} both map to {_fmt(point_unrank(field, n, target))}",
            first=pa, second=pb, image=point_unrank(field, n, target),
        )
    return Permutation(images)


def _fmt(point) -> str:
    return "(" + ", ".join(str(x) for x in point) + ")"


def oracle_sign(F, field=None, n=None, budget: int = DEFAULT_BUDGET) -> int:
    return permutation_sign(induced_permutation(F, field, n, budget))
