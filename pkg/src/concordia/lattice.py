"""Correction terms of boundaries of definite lattices and the delta homomorphism.

For a negative definite form Q of rank n bounding a rational homology sphere
Y (sharply), the correction term of the spin^c structure given by the coset
of characteristic vectors ``xi + 2 Q Z^n`` is

    d = max (xi^T Q^{-1} xi + n) / 4

over the coset. Writing ``A = -Q`` and ``xi = xi0 - 2 A x`` turns the
maximisation into a closest-vector problem in the A-norm around
``u = A^{-1} xi0 / 2``, which is solved exactly by Fincke-Pohst enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt
from typing import Sequence

import numpy as np

from . import _linalg as la
from .goeritz import Checkerboard, GoeritzData, checkerboard, definite_goeritz, goeritz_matrix
from .link_core import DiagramError, LinkDiagram, is_alternating, orientation_variants, \
    split_pieces


class MethodUnavailable(RuntimeError):
    """delta cannot be computed by the definite-form method for this input."""


@dataclass(frozen=True)
class DefiniteLattice:
    Q: tuple[tuple[int, ...], ...]
    sign: int  # +1 positive definite, -1 negative definite

    @classmethod
    def of(cls, Q: Sequence[Sequence[int]]) -> "DefiniteLattice":
        Q = [list(r) for r in Q]
        if not la.is_symmetric(Q):
            raise ValueError("form is not symmetric")
        s = la.definiteness(Q) if Q else -1
        if s == 0:
            raise ValueError("form is not definite")
        return cls(tuple(map(tuple, Q)), s)

    @property
    def rank(self) -> int:
        return len(self.Q)

    @property
    def discriminant(self) -> int:
        return abs(la.det(self.Q))

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.Q]

    def negated(self) -> "DefiniteLattice":
        return DefiniteLattice(tuple(tuple(-x for x in r) for r in self.Q), -self.sign)


@dataclass(frozen=True)
class CharClass:
    """Coset xi + 2 Q Z^n of characteristic vectors, stored by its reduced representative."""
    rep: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.rep)) + "]"


def is_characteristic(Q, xi) -> bool:
    return all((xi[i] - Q[i][i]) % 2 == 0 for i in range(len(Q)))


def char_class(lat: DefiniteLattice, xi: Sequence[int]) -> CharClass:
    Q = lat.rows()
    if not is_characteristic(Q, xi):
        raise ValueError("vector is not characteristic")
    if not Q:
        return CharClass(())
    c0 = [Q[i][i] % 2 for i in range(len(Q))]
    y = [(x - c) // 2 for x, c in zip(xi, c0)]
    y = la.reduce_mod_lattice(y, la.hermite_normal_form(Q))
    return CharClass(tuple(c + 2 * v for c, v in zip(c0, y)))


def char_cosets(lat: DefiniteLattice) -> list[CharClass]:
    """All |det Q| cosets of characteristic vectors, sorted by representative."""
    Q = lat.rows()
    if not Q:
        return [CharClass(())]
    if la.det(Q) == 0:
        raise ValueError("degenerate form")
    h = la.hermite_normal_form(Q)
    c0 = [Q[i][i] % 2 for i in range(len(Q))]
    out = [CharClass(tuple(c + 2 * y for c, y in zip(c0, ys)))
           for ys in product(*(range(h[i][i]) for i in range(len(Q))))]
    return sorted(out, key=lambda c: c.rep)


# ---- closest vector search ---------------------------------------------------

def _ldl(A):
    """A = sum_i D_i (x_i + sum_{j>i} m_ij x_j)^2, exact."""
    n = len(A)
    a = [[Fraction(x) for x in r] for r in A]
    D = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        D[i] = a[i][i]
        for j in range(i + 1, n):
            m[i][j] = a[i][j] / D[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= a[i][j] * a[i][k] / D[i]
    return D, m


def _qform(A, v) -> Fraction:
    return sum(A[i][j] * v[i] * v[j] for i in range(len(v)) for j in range(len(v)))


def _zigzag(c: Fraction):
    """Integers ordered by distance from c (Schnorr-Euchner order)."""
    t = round(c)
    yield t
    step = 1
    while True:
        if t + step - c <= c - (t - step):
            yield t + step
            yield t - step
        else:
            yield t - step
            yield t + step
        step += 1


def closest_vector(A, u) -> tuple[Fraction, list[int]]:
    """min over integer x of (x - u)^T A (x - u) for positive definite A, exactly.

    Depth-first Fincke-Pohst enumeration; the radius shrinks to the best value
    found so far, so the result is exact. Ties go to the lexicographically
    smallest x.
    """
    n = len(A)
    if n == 0:
        return Fraction(0), []
    D, m = _ldl(A)
    x0 = [round(t) for t in u]
    best = [_qform(A, [x - t for x, t in zip(x0, u)]), x0]
    x = [0] * n

    def rec(i: int, acc: Fraction):
        c = u[i] - sum(m[i][j] * (x[j] - u[j]) for j in range(i + 1, n))
        for t in _zigzag(c):
            val = acc + D[i] * (t - c) ** 2
            if val > best[0]:
                return  # zigzag distances never decrease
            x[i] = t
            if i == 0:
                if val < best[0] or x < best[1]:
                    best[0], best[1] = val, x[:]
            else:
                rec(i - 1, val)

    rec(n - 1, Fraction(0))
    return best[0], best[1]


def closest_vector_brute(A, u) -> tuple[Fraction, list[int]]:
    """Exhaustive search over the certified box |x_i - u_i| <= sqrt(R (A^-1)_ii)."""
    n = len(A)
    if n == 0:
        return Fraction(0), []
    x0 = [round(t) for t in u]
    R = _qform(A, [x - t for x, t in zip(x0, u)])
    Ainv = la.inverse(A)
    ranges = []
    for i in range(n):
        b2 = R * Ainv[i][i]
        s = isqrt(b2.numerator // b2.denominator + 1) + 1
        ranges.append(range((u[i] - s).__floor__(), (u[i] + s).__ceil__() + 1))
    # exact integer evaluation: with D the common denominator of u,
    # D^2 (x-u)^T A (x-u) = w^T A w for w = D x - D u
    D = 1
    for t in u:
        D = D * Fraction(t).denominator // gcd(D, Fraction(t).denominator)
    Du = np.array([int(t * D) for t in u], dtype=np.int64)
    An = np.array(A, dtype=np.int64)
    best = None
    axes = [np.arange(r.start, r.stop, dtype=np.int64) for r in ranges]
    head, tail = axes[:-1], axes[-1]
    for prefix in product(*head):
        X = np.empty((len(tail), n), dtype=np.int64)
        X[:, :-1] = prefix
        X[:, -1] = tail
        W = D * X - Du
        vals = np.einsum("ij,jk,ik->i", W, An, W)
        k = int(np.argmin(vals))  # first minimum = lexicographically smallest here
        cand = (Fraction(int(vals[k]), D * D), [int(v) for v in X[k]])
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def _target(A, xi0):
    Ainv = la.inverse(A)
    return [sum(Ainv[i][j] * xi0[j] for j in range(len(A))) / 2 for i in range(len(A))]


def d_invariant(lat: DefiniteLattice, c: CharClass | Sequence[int], brute: bool = False) -> Fraction:
    """Exact max over the coset of (xi^T Q^-1 xi + n)/4 for negative definite Q."""
    if lat.sign != -1:
        raise ValueError("d_invariant needs a negative definite form; negate and flip the sign")
    xi0 = list(c.rep if isinstance(c, CharClass) else c)
    Q = lat.rows()
    if not is_characteristic(Q, xi0):
        raise ValueError("vector is not characteristic")
    n = len(Q)
    if n == 0:
        return Fraction(0)
    A = [[-x for x in r] for r in Q]
    u = _target(A, xi0)
    qmin, _ = (closest_vector_brute if brute else closest_vector)(A, u)
    # xi^T Q^-1 xi = -xi^T A^-1 xi = -4 qmin
    return (Fraction(n) - 4 * qmin) / 4


def correction_term(lat: DefiniteLattice, c: CharClass | Sequence[int], brute: bool = False) -> Fraction:
    """d of the boundary for either sign, using d(-Y) = -d(Y) for positive forms."""
    if lat.sign == -1:
        return d_invariant(lat, c, brute)
    return -d_invariant(lat.negated(), c, brute)


def maximiser(lat: DefiniteLattice, c: CharClass) -> list[int]:
    """A characteristic vector attaining the maximum (negative definite case)."""
    Q = lat.rows()
    A = [[-x for x in r] for r in Q]
    _, x = closest_vector(A, _target(A, list(c.rep)))
    return [xi + 2 * s for xi, s in zip(c.rep, la.matvec(Q, x))]


# ---- link side ------------------------------------------------------------------

@dataclass(frozen=True)
class SpinSelector:
    regions: frozenset  # white regions in the characteristic sublink
    orientation: tuple  # crossing signs that produced it


def spin_set(d: LinkDiagram, cb: Checkerboard, gd: GoeritzData) -> SpinSelector:
    """White regions joined to r0 through an odd number of type II crossings."""
    adj: dict = {r: [] for r in cb.white}
    for k in cb.crossings:
        r, s = cb.white_corners[k]
        if r == s:
            continue
        odd = cb.crossing_type(d, k) == 2
        adj[r].append((s, odd))
        adj[s].append((r, odd))
    par = {gd.region_at_infinity: 0}
    stack = [gd.region_at_infinity]
    while stack:
        r = stack.pop()
        for s, odd in adj[r]:
            p = par[r] ^ odd
            if s not in par:
                par[s] = p
                stack.append(s)
            elif par[s] != p:
                raise DiagramError("type II parity is path dependent")
    chosen = frozenset(r for r, p in par.items() if p)
    return SpinSelector(chosen, tuple(d.crossings[k].sign for k in cb.crossings))


def spin_char_class(d: LinkDiagram, cb: Checkerboard | None = None,
                    gd: GoeritzData | None = None) -> tuple[DefiniteLattice, CharClass]:
    d.require_oriented("spin structure")
    if cb is None:
        cb = checkerboard(d)
    if gd is None:
        gd = goeritz_matrix(d, cb)
    try:
        lat = DefiniteLattice.of(gd.G)
    except ValueError as exc:
        raise MethodUnavailable(f"Goeritz form: {exc}") from exc
    S = spin_set(d, cb, gd)
    v = [1 if r in S.regions else 0 for r in gd.regions]
    xi = la.matvec(gd.G, v)
    assert is_characteristic(gd.G, xi), "spin sublink vector is not characteristic"
    return lat, char_class(lat, xi)


def spin_classes(d: LinkDiagram, flip: bool | None = None) -> list[tuple[tuple[int, ...], CharClass]]:
    """Characteristic class of every quasi-orientation, all in one lattice.

    Reversing components only changes crossing signs (tuples turn by two
    slots, which keeps eta), so one colouring of ``d`` serves every variant.
    """
    if flip is None:
        found = definite_goeritz(d)
        if found is None:
            raise MethodUnavailable("neither chessboard form is definite")
        cb, gd, _ = found
    else:
        cb = checkerboard(d, flip)
        gd = goeritz_matrix(d, cb)
    return [(tuple(rev), spin_char_class(v, cb, gd)[1]) for rev, v in orientation_variants(d)]


def delta(d: LinkDiagram, sharp: bool = False, flip: bool | None = None) -> int:
    """delta = 4 d(double branched cover, spin structure of the orientation).

    Computed from a definite chessboard form. The lattice bound is an equality
    for alternating diagrams; other diagrams are accepted only when the caller
    asserts sharpness (``sharp=True``, e.g. plumbings with at most one bad vertex).
    """
    d.require_oriented("delta")
    if len(split_pieces(d)) > 1:
        raise MethodUnavailable("split link: determinant is zero")
    if not sharp and not is_alternating(d):
        raise MethodUnavailable("diagram is not alternating and no sharp form was supplied")
    if flip is None:
        found = definite_goeritz(d)
        if found is None:
            raise MethodUnavailable("neither chessboard form is definite")
        cb, gd, _ = found
    else:
        cb = checkerboard(d, flip)
        gd = goeritz_matrix(d, cb)
    if gd.G and la.det(gd.G) == 0:
        raise MethodUnavailable("determinant is zero")
    lat, c = spin_char_class(d, cb, gd)
    val = 4 * correction_term(lat, c)
    if val.denominator != 1:
        raise ArithmeticError(f"4d = {val} is not an integer")
    return int(val)
