"""Two-bridge links S(p, q), the determinant square class and torsion witnesses.

Diagrams are built as medial graphs (see :mod:`concordia.tait`) of the
series-parallel network whose resistance is p/q, with its two terminals
identified. That graph has exactly p spanning trees, so the Goeritz
determinant is p, and every crossing has eta = +1, so the diagram is
alternating. Chirality convention: S(2k, 1) comes out with positive crossings
when its two components are oriented with linking number +k.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable

from sympy import factorint, isprime, nextprime
from sympy.ntheory import sqrt_mod

from .link_core import LinkDiagram, ORIENTED, linking_number, orientation_variants
from .tait import PlaneGraph, tait_diagram

FACTOR_LIMIT = 1 << 64  # trial division to 2^32 settles everything below this


class FactorizationLimit(ValueError):
    pass


@dataclass(frozen=True)
class TwoBridgeLink:
    p: int
    q: int

    def __post_init__(self):
        if not (self.p > 1 and 0 < self.q < self.p and gcd(self.p, self.q) == 1):
            raise ValueError(f"S({self.p},{self.q}) needs p > 1, 0 < q < p, gcd(p, q) = 1")

    @property
    def components(self) -> int:
        return 2 if self.p % 2 == 0 else 1

    def __str__(self) -> str:
        return f"S({self.p},{self.q})"


_SPQ = re.compile(r"^\s*S\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def parse_two_bridge(text: str) -> TwoBridgeLink:
    m = _SPQ.match(text)
    if not m:
        raise ValueError(f"expected S(p,q), got {text!r}")
    return TwoBridgeLink(int(m.group(1)), int(m.group(2)))


def cont_frac(p: int, q: int) -> list[int]:
    """Positive continued fraction of p/q (all entries >= 1)."""
    if gcd(p, q) != 1:
        raise ValueError("gcd(p, q) must be 1")
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def eval_cont_frac(terms: Iterable[int]) -> Fraction:
    terms = list(terms)
    x = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        x = a + 1 / x
    return x


# ---- series-parallel networks -------------------------------------------------

@dataclass
class _Net:
    """Two-terminal plane network. s darts listed bottom to top, t darts top to bottom."""
    s: list = field(default_factory=list)
    t: list = field(default_factory=list)
    inner: dict = field(default_factory=dict)


class _Builder:
    def __init__(self):
        self.edges: list = []
        self.fresh = 0

    def vertex(self):
        self.fresh += 1
        return self.fresh

    def edge(self, u, v) -> _Net:
        e = len(self.edges)
        self.edges.append((u, v, 1))
        return _Net([(e, 0)], [(e, 1)], {})

    def series(self, n1: _Net, n2: _Net, mid) -> _Net:
        inner = {**n1.inner, **n2.inner, mid: n2.s + n1.t}
        return _Net(n1.s, n2.t, inner)

    def parallel(self, top: _Net, bottom: _Net) -> _Net:
        return _Net(bottom.s + top.s, top.t + bottom.t, {**top.inner, **bottom.inner})

    def resistance(self, terms: list[int], s, t) -> _Net:
        """Network between s and t with resistance [terms]: a in series, then conductance rest."""
        a, rest = terms[0], terms[1:]
        verts = [s] + [self.vertex() for _ in range(a if rest else a - 1)] + [t]
        net = self.edge(verts[0], verts[1])
        for i in range(1, a):
            net = self.series(net, self.edge(verts[i], verts[i + 1]), verts[i])
        if rest:
            net = self.series(net, self.conductance(rest, verts[a], t), verts[a])
        return net

    def conductance(self, terms: list[int], s, t) -> _Net:
        """Network with conductance [terms]: a parallel edges beside resistance rest."""
        a, rest = terms[0], terms[1:]
        net = self.edge(s, t)
        for _ in range(a - 1):
            net = self.parallel(self.edge(s, t), net)
        if rest:
            net = self.parallel(self.resistance(rest, s, t), net)
        return net


def twobridge_graph(p: int, q: int) -> PlaneGraph:
    TwoBridgeLink(p, q)
    b = _Builder()
    s, t = 0, -1
    net = b.resistance(cont_frac(p, q), s, t)
    # identify the terminals: s darts then t darts around the merged vertex
    edges = [(0 if u == t else u, 0 if v == t else v, eta) for u, v, eta in b.edges]
    rotation = dict(net.inner)
    rotation[0] = net.s + net.t
    return PlaneGraph(edges, rotation)


def twobridge_diagram(p: int, q: int, lk_sign: int | None = None, marked: int = 0,
                      mode: str = ORIENTED) -> LinkDiagram:
    """Alternating diagram of S(p, q).

    For two-component links ``lk_sign`` (+1 or -1) selects the orientation
    whose linking number has that sign; None keeps the default orientation.
    """
    d = tait_diagram(twobridge_graph(p, q), marked=marked, mode=mode)
    if lk_sign is not None and d.n_components == 2:
        for _, v in orientation_variants(d):
            if linking_number(v, 0, 1) * lk_sign > 0:
                return v
    return d


# ---- arithmetic --------------------------------------------------------------

def factorization(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("need a positive integer")
    if n >= FACTOR_LIMIT:
        raise FactorizationLimit(f"{n} exceeds the factorisation bound 2^64")
    return {int(k): int(v) for k, v in factorint(n).items()}


def square_class(n: int) -> tuple[int, ...]:
    """Primes dividing n to an odd power; () means n is a square."""
    if n == 0:
        raise ValueError("determinant zero carries no square class")
    return tuple(sorted(p for p, e in factorization(abs(n)).items() if e % 2))


def square_class_value(n: int) -> int:
    out = 1
    for p in square_class(n):
        out *= p
    return out


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class WitnessCertificate:
    p: int
    q: int
    qs: tuple[int, ...]

    def checks(self) -> dict[str, bool]:
        p, q = self.p, self.q
        return {
            "p prime": isprime(p),
            "p = 1 mod 4": p % 4 == 1,
            "q odd": q % 2 == 1,
            "0 < q < p": 0 < q < p,
            "p | q^2+1": (q * q + 1) % p == 0,
            "p^2 does not divide q^2+1": (q * q + 1) % (p * p) != 0,
            "p does not divide any q_i^2+1": all((x * x + 1) % p for x in self.qs),
        }

    def verify(self) -> bool:
        return all(self.checks().values())


def torsion_witness(qs: Iterable[int]) -> WitnessCertificate:
    """Smallest prime p = 1 mod 4 missing every q_i^2+1, with its smallest odd q."""
    qs = tuple(sorted(set(int(x) for x in qs)))
    if any(x <= 0 or x % 2 == 0 for x in qs):
        raise ValueError("inputs must be odd positive integers")
    p = 4
    while True:
        p = nextprime(p)
        if p % 4 != 1 or any((x * x + 1) % p == 0 for x in qs):
            continue
        for q in sorted(r for r in sqrt_mod(-1, p, all_roots=True) if r % 2 == 1):
            if (q * q + 1) % (p * p):
                cert = WitnessCertificate(p, q, qs)
                assert cert.verify()
                return cert
