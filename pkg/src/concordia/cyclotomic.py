"""Exact arithmetic in the cyclotomic field Q(zeta_b), zeta_b = exp(2 pi i / b).

Elements are dense coefficient lists (highest degree first, sympy ``dup``
layout) reduced modulo the b-th cyclotomic polynomial.
"""
from __future__ import annotations

from functools import lru_cache

import mpmath
from sympy.polys.densearith import dup_add, dup_mul, dup_neg, dup_rem, dup_sub
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_invert
from sympy.polys.factortools import dup_zz_cyclotomic_poly
from sympy.polys.domains import ZZ


@lru_cache(maxsize=None)
def cyclotomic_poly(b: int) -> tuple:
    return tuple(QQ(int(c)) for c in dup_zz_cyclotomic_poly(b, ZZ))


class CyclotomicField:
    """Q(zeta_b) with complex conjugation and certified sign of real elements."""

    def __init__(self, b: int):
        if b < 1:
            raise ValueError("order must be positive")
        self.b = b
        self.phi = list(cyclotomic_poly(b))
        self.degree = len(self.phi) - 1
        self._conj_zeta = self._reduce(self._monomial(b - 1))

    # construction
    def _monomial(self, k: int) -> list:
        return [QQ(1)] + [QQ(0)] * k

    def _reduce(self, f: list) -> list:
        return dup_rem(f, self.phi, QQ)

    def zero(self) -> list:
        return []

    def one(self) -> list:
        return [QQ(1)]

    def const(self, c) -> list:
        return [QQ(c)] if c else []

    def zeta_power(self, k: int) -> list:
        return self._reduce(self._monomial(k % self.b))

    # arithmetic
    def add(self, x, y):
        return dup_add(x, y, QQ)

    def sub(self, x, y):
        return dup_sub(x, y, QQ)

    def neg(self, x):
        return dup_neg(x, QQ)

    def mul(self, x, y):
        return self._reduce(dup_mul(x, y, QQ))

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("zero in cyclotomic field")
        return dup_invert(x, self.phi, QQ)

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def conj(self, x):
        # substitute zeta -> zeta^(b-1) by Horner
        out: list = []
        for c in x:
            out = self.add(self.mul(out, self._conj_zeta), [c] if c else [])
        return out

    @staticmethod
    def is_zero(x) -> bool:
        return not x

    # numerics
    def to_complex(self, x, prec: int = 53):
        with mpmath.workprec(prec):
            z = mpmath.expjpi(mpmath.mpf(2) / self.b)
            acc = mpmath.mpc(0)
            for c in x:
                acc = acc * z + mpmath.mpf(int(c.numerator)) / int(c.denominator)
            return complex(acc)

    def real_sign(self, x) -> int:
        """Sign of a nonzero real element, certified with interval arithmetic."""
        if not x:
            return 0
        prec = 64
        while True:
            iv = mpmath.iv
            iv.prec = prec
            theta = 2 * iv.pi / self.b
            re = iv.mpf(0)
            for k, c in enumerate(reversed(x)):
                if c:
                    re += iv.mpf(int(c.numerator)) / int(c.denominator) * iv.cos(k * theta)
            if re.a > 0:
                return 1
            if re.b < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("could not certify sign")
