"""Exact integer and rational linear algebra on list-of-lists matrices.

Nothing here touches floating point. Matrices are plain ``list[list[int]]``
(or ``Fraction`` where noted) so that arbitrarily large entries stay exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence]) -> list:
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def bilinear(G: Sequence[Sequence], x: Sequence, y: Sequence):
    return sum(xi * gy for xi, gy in zip(x, matvec(G, y)))


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for a in v:
        g = gcd(g, int(a))
    return g


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rational_inverse(M: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def rank(M: Sequence[Sequence]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(r + 1, rows):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(M: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve ``M x = b`` for square invertible ``M``."""
    inv = rational_inverse(M)
    return [sum(a * Fraction(y) for a, y in zip(row, b)) for row in inv]


def signature(G: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` inertia of a symmetric matrix.

    Congruence diagonalisation over the rationals. A zero pivot with a
    nonzero off-diagonal entry is cured by adding the partner row/column.
    """
    A = [[Fraction(x) for x in row] for row in G]
    n = len(A)
    pos = neg = 0
    k = 0
    while k < n:
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    k += 1
                    continue
                # A[k][k] = A[j][j] = 0 here, so the new pivot is 2*A[k][j].
                A[k] = [a + b for a, b in zip(A[k], A[j])]
                for row in A:
                    row[k] += row[j]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / p
                for j in range(k + 1, n):
                    A[i][j] -= f * A[k][j]
        for i in range(k + 1, n):
            A[k][i] = A[i][k] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


def _row_echelon_unimodular(M: Matrix, ncols: int) -> Matrix:
    """Integer row echelon form of the first ``ncols`` columns of ``M``.

    Only unimodular row operations are used, so any extra columns carry
    the transformation along (augmented-matrix trick).
    """
    A = [list(row) for row in M]
    rows = len(A)
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, rows) if A[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, rows):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        if any(A[i][c] != 0 for i in range(r, rows)):
            r += 1
            if r == rows:
                break
    return A


def hnf_rows(B: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of the row span of ``B``.

    Returns only the nonzero rows: pivots positive, entries above each
    pivot reduced into ``[0, pivot)``. The result is canonical for the
    lattice spanned by the rows.
    """
    if not B:
        return []
    ncols = len(B[0])
    A = _row_echelon_unimodular([list(map(int, r)) for r in B], ncols)
    A = [row for row in A if any(row)]
    pivots = []
    for i, row in enumerate(A):
        c = next(j for j, x in enumerate(row) if x != 0)
        if row[c] < 0:
            A[i] = [-x for x in row]
        pivots.append(c)
    for i, c in enumerate(pivots):
        for k in range(i):
            q = A[k][c] // A[i][c]
            if q:
                A[k] = [x - q * y for x, y in zip(A[k], A[i])]
    return A


def integer_kernel(A: Sequence[Sequence[int]], n: int) -> Matrix:
    """Basis (as rows, in HNF) of ``{x in Z^n : A x = 0}``.

    ``n`` is passed explicitly so an empty constraint list still works.
    """
    k = len(A)
    if k == 0:
        return identity(n)
    At = transpose(A)
    aug = [list(At[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    E = _row_echelon_unimodular(aug, k)
    kernel = [row[k:] for row in E if not any(row[:k])]
    return hnf_rows(kernel) if kernel else []


def smith_normal_form(A: Sequence[Sequence[int]]) -> Tuple[List[int], Matrix, Matrix]:
    """Return ``(diag, P, Q)`` with ``P A Q = diag(diag)`` for square ``A``.

    ``P`` and ``Q`` are unimodular, the diagonal is nonnegative and each
    entry divides the next.
    """
    n = len(A)
    D = [list(map(int, row)) for row in A]
    P = identity(n)
    Q = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (D, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [x - q * y for x, y in zip(D[dst], D[src])]
        P[dst] = [x - q * y for x, y in zip(P[dst], P[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (D, Q):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(n):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, n) for j in range(t, n) if D[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, n):
                if D[i][t]:
                    add_row(i, t, D[i][t] // D[t][t])
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, D[t][j] // D[t][t])
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            # divisibility: fold an offending row into row t
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            P[t] = [-x for x in P[t]]
    return [D[i][i] for i in range(n)], P, Q
