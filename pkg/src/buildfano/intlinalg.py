"""Exact integer linear algebra for small square systems.

Determinants use Bareiss fraction-free elimination; solves run Gaussian
elimination over :class:`fractions.Fraction`.  Matrices are sequences of
rows of Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int]]


class SingularMatrix(ArithmeticError):
    pass


def det(M: Matrix) -> int:
    """Bareiss determinant; exact for integer input."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // prev
        prev = pivot
    return sign * A[n - 1][n - 1]


def transpose(M: Matrix) -> list[list[int]]:
    return [list(col) for col in zip(*M)] if M else []


def solve(M: Matrix, b: Sequence[int]) -> list[Fraction]:
    """Solve ``M x = b`` exactly.  Raises :class:`SingularMatrix`."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise SingularMatrix("singular system")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def solve_columns(cols: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Coefficients expressing ``b`` in the basis given by ``cols``."""
    return solve(transpose(cols), b)


def adjugate(M: Matrix) -> list[list[int]]:
    """Integer adjugate, so that ``M @ adj(M) == det(M) * I``."""
    n = len(M)
    if n == 0:
        return []
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(map(list, M)) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def unimodular_inverse(M: Matrix) -> list[list[int]]:
    d = det(M)
    if abs(d) != 1:
        raise SingularMatrix(f"determinant {d} is not ±1")
    return [[d * x for x in row] for row in adjugate(M)]


def matmul(A: Matrix, B: Matrix) -> list[list[int]]:
    Bt = transpose(B)
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in A)


def rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    A = [[Fraction(x) for x in v] for v in vectors]
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def kernel_vector(rows: Sequence[Sequence[int]], dim: int) -> tuple[int, ...] | None:
    """A primitive integer vector orthogonal to ``rows`` when they span a
    hyperplane (``len`` independent rows = dim - 1); ``None`` otherwise."""
    if rank(rows) != dim - 1:
        return None
    basis = _independent_subset(rows)
    normal = []
    for j in range(dim):
        minor = [list(r[:j]) + list(r[j + 1:]) for r in basis]
        normal.append((-1) ** j * det(minor))
    g = 0
    for x in normal:
        g = gcd(g, x)
    return tuple(x // g for x in normal)


def _independent_subset(rows):
    chosen: list = []
    for r in rows:
        if rank(chosen + [r]) > len(chosen):
            chosen.append(r)
    return chosen
