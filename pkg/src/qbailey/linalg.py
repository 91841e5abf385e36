"""Small exact integer and rational matrix helpers."""
from __future__ import annotations

from fractions import Fraction


def cartan_a(n: int) -> list[list[int]]:
    """The A_{n-1} Cartan matrix, of size (n-1) x (n-1)."""
    size = n - 1
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(size)] for i in range(size)]


def incidence_a(n: int) -> list[list[int]]:
    """Incidence matrix of the A_{n-1} Dynkin diagram."""
    size = n - 1
    return [[1 if abs(i - j) == 1 else 0 for j in range(size)] for i in range(size)]


def cartan_inverse_a(n: int) -> list[list[Fraction]]:
    """Exact inverse of the A_{n-1} Cartan matrix: min(i,j) - ij/n (1-based)."""
    size = n - 1
    return [[Fraction(min(i, j)) - Fraction(i * j, n) for j in range(1, size + 1)] for i in range(1, size + 1)]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def inverse(a) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def is_positive_definite(a) -> bool:
    """Sylvester's criterion with exact leading minors."""
    n = len(a)
    for k in range(1, n + 1):
        if determinant([row[:k] for row in a[:k]]) <= 0:
            return False
    return True


def determinant(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det
