"""Exact dense linear algebra over a finite field (matrices as row tuples)."""

from __future__ import annotations

from typing import Sequence

from .errors import ArityMismatch, SingularMatrix
from .gf import FieldElement, FiniteField

Matrix = tuple[tuple[FieldElement, ...], ...]


def as_matrix(field: FiniteField, rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(field(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ArityMismatch("matrix must be square")
    return m


def identity(field: FiniteField, n: int) -> Matrix:
    return tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    field = a[0][0].field
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = field.zero
            for k in range(n):
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def matvec(a: Matrix, v: Sequence[FieldElement]) -> tuple[FieldElement, ...]:
    field = a[0][0].field
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            s = s + x * y
        out.append(s)
    return tuple(out)


def determinant(a: Matrix) -> FieldElement:
    n = len(a)
    field = a[0][0].field
    rows = [list(r) for r in a]
    det = field.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero), None)
        if pivot is None:
            return field.zero
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            if not rows[r][col].is_zero:
                f = rows[r][col] * inv
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


def inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises SingularMatrix."""
    n = len(a)
    field = a[0][0].field
    rows = [list(r) + list(e) for r, e in zip(a, identity(field, n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not rows[r][col].is_zero), None)
        if pivot is None:
            raise SingularMatrix("matrix is not invertible")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and not rows[r][col].is_zero:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)
