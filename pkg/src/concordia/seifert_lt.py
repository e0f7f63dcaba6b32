"""Seifert matrices of closed braids, Alexander polynomials and Levine-Tristram invariants.

The Seifert surface of a closed braid is the canonical one: a disk per strand
and a half-twisted band per letter. Its first homology is generated by the
loops running between consecutive bands in the same gap, so a word of length
``c`` on ``n`` strands gives a square matrix of size ``c - n + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import mpmath
import numpy as np
import sympy

from . import _linalg as la
from .cyclotomic import CyclotomicField, cyclotomic_poly


class SurfaceError(ValueError):
    """The canonical Seifert surface of the closed braid is disconnected."""


@dataclass(frozen=True)
class SeifertMatrix:
    M: tuple[tuple[int, ...], ...]
    components: int = 1

    @property
    def size(self) -> int:
        return len(self.M)

    @property
    def genus(self) -> int:
        return (self.size - self.components + 1) // 2

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.M]

    def block_sum(self, other: "SeifertMatrix") -> "SeifertMatrix":
        m = la.block_sum(self.M, other.M)
        return SeifertMatrix(tuple(map(tuple, m)), self.components + other.components - 1)


def parse_braid(text: str) -> list[int]:
    try:
        word = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValueError(f"bad braid word {text!r}") from exc
    if not word or 0 in word:
        raise ValueError("braid word must be a nonempty list of nonzero integers")
    return word


def braid_components(word: Sequence[int], n: int) -> int:
    perm = list(range(n))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, count = set(), 0
    for s in range(n):
        if s not in seen:
            count += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    return count


def seifert_from_braid(word: Sequence[int], n_strands: int | None = None) -> SeifertMatrix:
    word = list(word)
    n = n_strands or (max(abs(g) for g in word) + 1)
    gaps: dict[int, list[int]] = {i: [] for i in range(1, n)}
    for pos, g in enumerate(word):
        gaps[abs(g)].append(pos)
    if any(not v for v in gaps.values()):
        raise SurfaceError("some pair of adjacent strands never crosses; split the link first")

    loops = []  # (gap, start, end, sign at start, sign at end)
    for i in range(1, n):
        ps = gaps[i]
        for a, b in zip(ps, ps[1:]):
            loops.append((i, a, b, 1 if word[a] > 0 else -1, 1 if word[b] > 0 else -1))
    size = len(loops)
    M = [[0] * size for _ in range(size)]
    for g, (i, a, b, sa, sb) in enumerate(loops):
        if sa == sb:
            M[g][g] = -sa
        for h, (j, c, d, sc, sd) in enumerate(loops):
            if j == i and c == b:
                # consecutive loops share the band at position b
                if sb > 0:
                    M[h][g] = 1
                else:
                    M[g][h] = -1
            elif j == i + 1:
                if c < a < d < b:
                    M[h][g] = 1
                elif a < c < b < d:
                    M[h][g] = -1
    return SeifertMatrix(tuple(map(tuple, M)), braid_components(word, n))


def alexander(S: SeifertMatrix | Sequence[Sequence[int]]) -> tuple[int, ...]:
    """det(M - t M^T), normalised; coefficients from degree 0 upward. ``()`` is zero."""
    M = S.rows() if isinstance(S, SeifertMatrix) else [list(r) for r in S]
    n = len(M)
    if n == 0:
        return (1,)
    t = sympy.Symbol("t")
    pts = [(k, la.det([[M[i][j] - k * M[j][i] for j in range(n)] for i in range(n)]))
           for k in range(n + 1)]
    poly = sympy.Poly(sympy.interpolate(pts, t), t)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs and coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def alexander_at(coeffs: Sequence[int], t) -> int:
    return sum(c * t ** k for k, c in enumerate(coeffs))


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """omega = exp(2 pi i a / b), reduced, with 0 < a/b < 1."""
    a: int
    b: int

    def __post_init__(self):
        if not (0 < self.a < self.b):
            raise ValueError("need 0 < a < b")
        g = gcd(self.a, self.b)
        if g != 1:
            object.__setattr__(self, "a", self.a // g)
            object.__setattr__(self, "b", self.b // g)

    @classmethod
    def from_fraction(cls, f: Fraction) -> "RootOfUnity":
        f = Fraction(f)
        return cls(f.numerator, f.denominator)

    @property
    def turns(self) -> Fraction:
        return Fraction(self.a, self.b)

    @property
    def is_prime_power(self) -> bool:
        return len(sympy.factorint(self.b)) == 1

    def __complex__(self) -> complex:
        return complex(mpmath.expjpi(2 * mpmath.mpf(self.a) / self.b))

    def __str__(self) -> str:
        return f"exp(2pi i {self.a}/{self.b})"


def _hermitian(K: CyclotomicField, M, a: int):
    w, wb = K.zeta_power(a), K.zeta_power(-a)
    c1 = K.sub(K.one(), wb)   # 1 - conj(omega)
    c2 = K.sub(K.one(), w)    # 1 - omega
    n = len(M)
    return [[K.add(K.mul(c1, K.const(M[i][j])), K.mul(c2, K.const(M[j][i])))
             for j in range(n)] for i in range(n)]


def hermitian_inertia(K: CyclotomicField, H) -> tuple[int, int, int]:
    """(positive, negative, zero) of a Hermitian matrix over Q(zeta_b), exactly.

    Congruence elimination keeps every pivot in the real subfield; its sign is
    certified by interval evaluation.
    """
    n = len(H)
    H = [row[:] for row in H]
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if not K.is_zero(H[i][i])), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active
                         if i != j and not K.is_zero(H[i][j])), None)
            if pair is None:
                break
            i, j = pair
            c = H[i][j]
            cc = K.conj(c)
            # row_i += c row_j ; col_i += conj(c) col_j  ->  H_ii = 2|H_ij|^2
            for t in range(n):
                H[i][t] = K.add(H[i][t], K.mul(c, H[j][t]))
            for t in range(n):
                H[t][i] = K.add(H[t][i], K.mul(cc, H[t][j]))
            k = i
        p = H[k][k]
        if K.real_sign(p) > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        pinv = K.inv(p)
        for i in active:
            if K.is_zero(H[i][k]):
                continue
            f = K.mul(H[i][k], pinv)
            fc = K.conj(f)
            for t in range(n):
                H[i][t] = K.sub(H[i][t], K.mul(f, H[k][t]))
            for t in range(n):
                H[t][i] = K.sub(H[t][i], K.mul(fc, H[t][k]))
    return pos, neg, n - pos - neg


def lt_signature_nullity(S: SeifertMatrix | Sequence[Sequence[int]],
                         omega: RootOfUnity) -> tuple[int, int]:
    """Exact Levine-Tristram signature and nullity of (1 - conj w) M + (1 - w) M^T."""
    M = S.rows() if isinstance(S, SeifertMatrix) else [list(r) for r in S]
    if not M:
        return 0, 0
    if omega.b == 2:
        pos, neg, zero = la.inertia([[M[i][j] + M[j][i] for j in range(len(M))]
                                     for i in range(len(M))])
        return pos - neg, zero
    K = CyclotomicField(omega.b)
    pos, neg, zero = hermitian_inertia(K, _hermitian(K, M, omega.a))
    return pos - neg, zero


def lt_numeric(M: Sequence[Sequence[int]], theta: float, tol: float = 1e-9) -> tuple[int, int]:
    """Floating point signature/nullity at exp(i theta); for cross-checks only."""
    A = np.array(M, dtype=float).reshape(len(M), len(M))
    if A.size == 0:
        return 0, 0
    w = np.exp(1j * theta)
    H = (1 - np.conj(w)) * A + (1 - w) * A.T
    ev = np.linalg.eigvalsh(H)
    return int((ev > tol).sum() - (ev < -tol).sum()), int((abs(ev) <= tol).sum())


# ---- profiles -------------------------------------------------------------

@dataclass(frozen=True)
class Jump:
    turns: Fraction | float   # exact when the root is a root of unity
    before: int
    after: int
    at: int | None            # signature exactly at the root, when computable


@dataclass
class SignatureProfile:
    arcs: list = field(default_factory=list)      # (lo, hi, sigma); angles in turns
    jumps: list = field(default_factory=list)
    samples: dict = field(default_factory=dict)   # Fraction -> (sigma, nullity)

    def value(self, turns) -> int:
        """Signature at a point of an open arc."""
        for lo, hi, s in self.arcs:
            if lo < turns < hi:
                return s
        raise ValueError("point lies on a root of the Alexander polynomial")

    def jump_turns(self) -> list:
        return [j.turns for j in self.jumps]


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Fraction with smallest denominator strictly inside (lo, hi)."""
    b = 1
    while True:
        a = (lo * b).__floor__() + 1
        if Fraction(a, b) < hi:
            return Fraction(a, b)
        b += 1


def _circle_roots(coeffs: Sequence[int]) -> list:
    """Roots of the polynomial on the unit circle, as turn angles in (0, 1).

    Roots of unity come back as exact Fractions; others as mpf to 60 digits.
    """
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(coeffs)), t)
    out = []
    for fac, _ in poly.factor_list()[1]:
        deg = fac.degree()
        if deg == 0:
            continue
        fc = tuple(int(c) for c in fac.all_coeffs())
        if fc[0] < 0:
            fc = tuple(-c for c in fc)
        m_found = None
        for m in range(1, 2 * deg * deg + 3):
            if tuple(int(c) for c in cyclotomic_poly(m)) == fc:
                m_found = m
                break
        if m_found is not None:
            out += [Fraction(k, m_found) for k in range(1, m_found) if gcd(k, m_found) == 1]
            continue
        with mpmath.workdps(60):
            for z in mpmath.polyroots(list(fc), maxsteps=400, extraprec=400):
                if abs(abs(z) - 1) < mpmath.mpf(10) ** -40:
                    ang = mpmath.arg(z) / (2 * mpmath.pi)
                    if ang < 0:
                        ang += 1
                    if 0 < ang < 1:
                        out.append(ang)
    return sorted(out, key=float)


def signature_profile(S: SeifertMatrix | Sequence[Sequence[int]], resolution: int = 12) -> SignatureProfile:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    M = S.rows() if isinstance(S, SeifertMatrix) else [list(r) for r in S]
    prof = SignatureProfile()
    delta = alexander(M)

    def sample(f: Fraction):
        if f not in prof.samples:
            prof.samples[f] = lt_signature_nullity(M, RootOfUnity.from_fraction(f))
        return prof.samples[f]

    grid = [Fraction(a, resolution) for a in range(1, resolution)]
    for f in grid:
        sample(f)
    if not M:
        prof.arcs = [(Fraction(0), Fraction(1), 0)]
        return prof
    if not delta:
        # degenerate form everywhere: only the grid is available
        pts = sorted(prof.samples)
        prev = None
        for f in pts:
            s = prof.samples[f][0]
            if prev is not None and prev[1] != s:
                prof.jumps.append(Jump((prev[0] + f) / 2, prev[1], s, None))
            prev = (f, s)
        return prof

    roots = _circle_roots(delta)
    pad = Fraction(1, 10 ** 30)
    bounds = [Fraction(0)] + roots + [Fraction(1)]
    for lo, hi in zip(bounds, bounds[1:]):
        flo = lo if isinstance(lo, Fraction) else Fraction(str(mpmath.nstr(lo, 50))) + pad
        fhi = hi if isinstance(hi, Fraction) else Fraction(str(mpmath.nstr(hi, 50))) - pad
        mid = _simplest_between(flo, fhi)
        prof.arcs.append((lo, hi, sample(mid)[0]))
    for r, (left, right) in zip(roots, zip(prof.arcs, prof.arcs[1:])):
        at = sample(r)[0] if isinstance(r, Fraction) else None
        if left[2] != right[2]:
            prof.jumps.append(Jump(r, left[2], right[2], at))
    return prof
