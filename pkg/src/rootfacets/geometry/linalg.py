"""Exact linear algebra over the rationals.

Matrices are plain sequences of rows whose entries are ``int`` or
``Fraction``.  Nothing in this module ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple

RationalMatrix = Sequence[Sequence["int | Fraction"]]
Vector = Tuple["int | Fraction", ...]


def _integer_rows(M: RationalMatrix) -> Tuple[List[List[int]], Fraction]:
    """Scale every row to integers; return the rows and the product of scales."""
    rows = []
    scale = Fraction(1)
    for row in M:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in row])
        scale *= den
    return rows, scale


def rank_det(M: RationalMatrix) -> Tuple[int, Optional[Fraction]]:
    """Rank of ``M`` and, when square, its determinant.

    Uses Bareiss fraction-free elimination on an integer rescaling of the
    rows, so every intermediate value is an exact integer minor.
    """
    A, scale = _integer_rows(M)
    m = len(A)
    ncols = len(A[0]) if m else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            row_i = A[i]
            row_r = A[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - a_ic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    det: Optional[Fraction] = None
    if m == ncols:
        det = Fraction(0) if r < m else Fraction(sign * A[m - 1][m - 1]) / scale
        if m == 0:
            det = Fraction(1)
    return r, det


def det(M: RationalMatrix) -> Fraction:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    return rank_det(M)[1]


def int_det(M: RationalMatrix) -> int:
    """Determinant of an integer matrix, as an ``int``."""
    d = det(M)
    if d.denominator != 1:
        raise ValueError("matrix is not integral")
    return int(d)


def rank(M: RationalMatrix) -> int:
    if not M:
        return 0
    return rank_det(M)[0]


def transpose(M: RationalMatrix) -> List[List]:
    return [list(col) for col in zip(*M)]


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def mat_vec(M: RationalMatrix, v: Sequence) -> List:
    return [dot(row, v) for row in M]


def solve(A: RationalMatrix, b: Sequence) -> Optional[List[Fraction]]:
    """Solve ``A x = b`` exactly.

    ``A`` may be rectangular.  Returns one solution (free variables set to
    zero) or ``None`` if the system is inconsistent.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    T = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if T[i][c] != 0), None)
        if p is None:
            continue
        T[r], T[p] = T[p], T[r]
        inv = 1 / T[r][c]
        T[r] = [x * inv for x in T[r]]
        for i in range(m):
            if i != r and T[i][c] != 0:
                f = T[i][c]
                T[i] = [a - f * b_ for a, b_ in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if T[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = T[i][n]
    return x


def inverse(A: RationalMatrix) -> List[List[Fraction]]:
    n = len(A)
    T = [[Fraction(x) for x in A[i]] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if T[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        T[c], T[p] = T[p], T[c]
        inv = 1 / T[c][c]
        T[c] = [x * inv for x in T[c]]
        for i in range(n):
            if i != c and T[i][c] != 0:
                f = T[i][c]
                T[i] = [a - f * b for a, b in zip(T[i], T[c])]
    return [row[n:] for row in T]


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Optional[List[Fraction]]:
    """Coefficients of ``v`` over linearly independent ``basis`` vectors.

    Returns ``None`` when ``v`` is outside their span.
    """
    if not basis:
        return [] if all(x == 0 for x in v) else None
    A = transpose(basis)
    x = solve(A, v)
    if x is None:
        return None
    # solve() returns a particular solution; with independent columns it is
    # unique, but a dependent basis must not silently pass.
    if rank(basis) != len(basis):
        raise ValueError("basis vectors are linearly dependent")
    return x


def nullspace_basis(rows: RationalMatrix, ncols: int) -> List[List[Fraction]]:
    """A basis of ``{z : rows @ z = 0}``, one vector per free column of the
    reduced row echelon form (with a 1 in that column)."""
    T = [[Fraction(a) for a in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(T)) if T[i][c] != 0), None)
        if p is None:
            continue
        T[r], T[p] = T[p], T[r]
        inv = 1 / T[r][c]
        T[r] = [a * inv for a in T[r]]
        for i in range(len(T)):
            if i != r and T[i][c] != 0:
                f = T[i][c]
                T[i] = [a - f * b for a, b in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    out = []
    for free in (c for c in range(ncols) if c not in pivots):
        z = [Fraction(0)] * ncols
        z[free] = Fraction(1)
        for i, c in enumerate(pivots):
            z[c] = -T[i][free]
        out.append(z)
    return out


def nullspace_vector(rows: RationalMatrix, ncols: int) -> Optional[List[Fraction]]:
    """One nonzero ``z`` with ``rows @ z = 0``, or ``None`` if the kernel is trivial.

    The returned vector has a 1 in its first free column.
    """
    basis = nullspace_basis(rows, ncols)
    return basis[0] if basis else None
