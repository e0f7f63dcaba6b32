"""Exact integer and rational linear algebra on small dense matrices.

Matrices are plain lists of lists. Everything here is exact; floating point
never enters.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(row) for row in zip(*a)] if a else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def block_sum(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, m = len(a), len(b)
    out = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = b[i][j]
    return out


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a: Sequence[Sequence], modulus: int | None = None) -> int:
    """Rank over the rationals, or over GF(p) when ``modulus`` is a prime."""
    rows = [list(r) for r in a]
    if not rows or not rows[0]:
        return 0
    if modulus is None:
        rows = [[Fraction(x) for x in r] for r in rows]
    else:
        rows = [[x % modulus for x in r] for r in rows]
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if modulus is None:
            inv = 1 / rows[r][c]
        else:
            inv = pow(rows[r][c], -1, modulus)
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                if modulus is not None:
                    rows[i] = [x % modulus for x in rows[i]]
        r += 1
        if r == len(rows):
            break
    return r


def pivot_columns(a: Sequence[Sequence], modulus: int | None = None) -> list[int]:
    """Indices of a maximal set of independent columns (greedy, left to right)."""
    chosen: list[int] = []
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        trial = chosen + [c]
        sub = [[row[j] for j in trial] for row in a]
        if rank(sub, modulus) == len(trial):
            chosen = trial
    return chosen


def inverse(a: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def inertia(a: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a rational symmetric matrix.

    Symmetric congruence diagonalisation over the rationals. When every
    remaining diagonal entry vanishes but an off-diagonal one does not, the
    row/column pair is combined first so a nonzero pivot appears.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if m[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active
                         if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row_i += row_j, col_i += col_j
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            k = i
        p = m[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            if m[i][k] != 0:
                f = m[i][k] / p
                for t in range(n):
                    m[i][t] -= f * m[k][t]
                for t in range(n):
                    m[t][i] -= f * m[t][k]
    return pos, neg, n - pos - neg


def signature(a: Sequence[Sequence]) -> int:
    pos, neg, _ = inertia(a)
    return pos - neg


def definiteness(a: Sequence[Sequence]) -> int:
    """+1 if positive definite, -1 if negative definite, 0 otherwise."""
    n = len(a)
    pos, neg, _ = inertia(a)
    if pos == n:
        return 1
    if neg == n:
        return -1
    return 0


def hermite_normal_form(a: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF of the lattice spanned by the rows of a full-rank square matrix.

    The result is upper triangular with positive diagonal and entries above the
    diagonal reduced into ``[0, d_j)``.
    """
    n = len(a)
    h = [list(row) for row in a]
    for c in range(n):
        # gcd-combine column c over rows c..n-1
        while True:
            nz = [r for r in range(c, n) if h[r][c] != 0]
            if not nz:
                raise ValueError("singular lattice")
            r0 = min(nz, key=lambda r: abs(h[r][c]))
            h[c], h[r0] = h[r0], h[c]
            done = True
            for r in range(c + 1, n):
                if h[r][c] != 0:
                    q = h[r][c] // h[c][c]
                    h[r] = [x - q * y for x, y in zip(h[r], h[c])]
                    if h[r][c] != 0:
                        done = False
            if done:
                break
        if h[c][c] < 0:
            h[c] = [-x for x in h[c]]
    for c in range(n):
        for r in range(c):
            q = h[r][c] // h[c][c]
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[c])]
    return h


def reduce_mod_lattice(v: Sequence[int], hnf: Matrix) -> list[int]:
    """Canonical representative of ``v`` modulo the row lattice of ``hnf``."""
    w = list(v)
    for c in range(len(hnf)):
        q = w[c] // hnf[c][c]
        if q:
            w = [x - q * y for x, y in zip(w, hnf[c])]
    return w
