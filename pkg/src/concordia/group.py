"""Formal classes of marked links and the homomorphisms that obstruct them.

Nothing here decides whether a class vanishes. Every output is one-sided:
a nonzero obstruction proves nontriviality, a zero vector proves nothing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

from . import _linalg as la
from .goeritz import determinant, signature
from .lattice import MethodUnavailable, delta
from .link_core import (ORIENTED, PARTLY, DiagramError, LinkDiagram, braid_closure,
                        canonical_form, connected_sum, marked_knot, mu, negate, parse_pd,
                        render_pd, total_linking, unknot)
from .plumbing import PlumbingTree, montesinos_diagram, parse_tree, tree_colouring_flip
from .seifert_lt import RootOfUnity, SeifertMatrix, lt_signature_nullity, parse_braid, \
    seifert_from_braid
from .twobridge import FactorizationLimit, parse_two_bridge, square_class, twobridge_diagram

DEFAULT_B = 12


def default_omegas(B: int = DEFAULT_B) -> list[RootOfUnity]:
    """Arc midpoints exp(i pi (2j-1) / 2B), j = 1..B, kept when the order is a prime power."""
    out = []
    for j in range(1, B + 1):
        w = RootOfUnity(2 * j - 1, 4 * B)
        if w.is_prime_power:
            out.append(w)
    return out


# ---- descriptions -----------------------------------------------------------

_S_RE = re.compile(r"^S\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


@dataclass(frozen=True)
class MarkedLinkDescription:
    """A textual link description: ``S(p,q)``, ``braid: ...``, ``tree: ...``,
    ``fixture: name`` or PD text.

    Braids are marked on the component through strand 1. Two-component
    ``S(p,q)`` is oriented with positive linking number.
    """
    kind: str
    text: str
    mode: str = ORIENTED

    @classmethod
    def parse(cls, text: str, mode: str = ORIENTED) -> "MarkedLinkDescription":
        s = text.strip()
        if s.startswith("fixture:"):
            name = s.split(":", 1)[1].strip()
            return cls.parse(load_fixture_text(name), mode)
        for kind in ("braid", "tree", "pd"):
            if s.startswith(kind + ":"):
                out = cls(kind, s.split(":", 1)[1].strip(), mode)
                out.diagram  # validate eagerly
                return out
        if _S_RE.match(s):
            out = cls("two_bridge", s, mode)
        elif s.startswith("PD["):
            out = cls("pd", s, mode)
        else:
            raise DiagramError(f"unrecognised link description {text[:40]!r}")
        out.diagram
        return out

    @classmethod
    def of_diagram(cls, d: LinkDiagram) -> "MarkedLinkDescription":
        return cls("pd", render_pd(d, sort=True), d.mode)

    def __str__(self) -> str:
        return self.text if self.kind in ("two_bridge", "pd") else f"{self.kind}: {self.text}"

    @cached_property
    def diagram(self) -> LinkDiagram:
        if self.kind == "braid":
            return braid_closure(parse_braid(self.text), mode=self.mode)
        if self.kind == "two_bridge":
            L = parse_two_bridge(self.text)
            return twobridge_diagram(L.p, L.q, lk_sign=1, mode=self.mode)
        if self.kind == "tree":
            return montesinos_diagram(self.tree, mode=self.mode)
        d = parse_pd(self.text)
        return d if d.mode == self.mode else d.with_mode(self.mode)

    @cached_property
    def tree(self) -> PlumbingTree | None:
        return parse_tree(self.text) if self.kind == "tree" else None

    @cached_property
    def seifert(self) -> SeifertMatrix | None:
        """A Seifert matrix when the description carries a braid (S(p,1) is the closed braid s1^p)."""
        if self.kind == "braid":
            return seifert_from_braid(parse_braid(self.text))
        if self.kind == "two_bridge":
            L = parse_two_bridge(self.text)
            if L.q == 1:
                return seifert_from_braid([1] * L.p)
        d = self.diagram
        if d.n_components == 1 and d.n_crossings == 0:
            return SeifertMatrix((), 1)
        return None

    @cached_property
    def key(self) -> str:
        return canonical_form(self.diagram).decode()


def load_fixture_text(name: str) -> str:
    """Contents of a packaged fixture with ``#`` comment lines removed."""
    f = resources.files("concordia.fixtures").joinpath(name)
    if not f.is_file():
        raise DiagramError(f"no fixture named {name!r}")
    lines = [ln for ln in f.read_text().splitlines() if not ln.lstrip().startswith("#")]
    return "\n".join(lines).strip()


# ---- per-link invariants ----------------------------------------------------

@dataclass(frozen=True)
class LinkInvariants:
    l: int
    mu: int
    det: int
    det_class: tuple[int, ...] | None
    sigma: int | None
    delta: int | None
    delta_reason: str | None
    lt: tuple[tuple[RootOfUnity, int, int], ...] | None
    lt_reason: str | None


def link_invariants(desc: MarkedLinkDescription, omegas: Sequence[RootOfUnity]) -> LinkInvariants:
    d = desc.diagram
    det = determinant(d)
    try:
        dc = square_class(det) if det else None
    except FactorizationLimit:
        dc = None
    if desc.mode == PARTLY:
        return LinkInvariants(total_linking(d), mu(d), det, dc, None, None,
                              "partly oriented", None, "partly oriented")
    sig = signature(d)
    de, reason = None, None
    try:
        if desc.tree is not None:
            if len(desc.tree.bad_vertices()) > 1:
                raise MethodUnavailable("plumbing with more than one bad vertex")
            de = delta(d, sharp=True, flip=tree_colouring_flip(d, desc.tree))
        else:
            de = delta(d)
    except MethodUnavailable as exc:
        reason = str(exc)
    lt, lt_reason = None, None
    S = desc.seifert
    if S is None:
        lt_reason = "no Seifert matrix for this description"
    else:
        lt = tuple((w, *lt_signature_nullity(S, w)) for w in omegas)
    return LinkInvariants(total_linking(d), mu(d), det, dc, sig, de, reason, lt, lt_reason)


# ---- formal classes ---------------------------------------------------------

@dataclass(frozen=True)
class FormalClass:
    """Integer combination of marked links, merged on their canonical diagrams."""
    terms: tuple[tuple[MarkedLinkDescription, int], ...]
    mode: str = ORIENTED

    def __post_init__(self):
        merged: dict[str, list] = {}
        for desc, m in self.terms:
            if desc.mode != self.mode:
                raise ValueError(f"summand mode {desc.mode} differs from class mode {self.mode}")
            slot = merged.setdefault(desc.key, [desc, 0])
            slot[1] += int(m)
        terms = tuple(sorted(((d, m) for d, m in merged.values() if m),
                             key=lambda t: t[0].key))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, *items, mode: str = ORIENTED) -> "FormalClass":
        """``FormalClass.of("S(6,1)", ("braid: 1 1", -2))``."""
        terms = []
        for it in items:
            text, m = (it, 1) if not isinstance(it, tuple) else it
            desc = text if isinstance(text, MarkedLinkDescription) else \
                MarkedLinkDescription.parse(text, mode)
            terms.append((desc, m))
        return cls(tuple(terms), mode)

    @property
    def is_empty(self) -> bool:
        return not self.terms


def class_sum(a: FormalClass, b: FormalClass) -> FormalClass:
    if a.mode != b.mode:
        raise ValueError(f"cannot add {a.mode} and {b.mode} classes")
    return FormalClass(a.terms + b.terms, a.mode)


def class_neg(a: FormalClass) -> FormalClass:
    return FormalClass(tuple((d, -m) for d, m in a.terms), a.mode)


# ---- obstruction vectors ----------------------------------------------------

@dataclass(frozen=True)
class ObstructionVector:
    mode: str
    l: int
    mu: int
    det_class: tuple[int, ...] | None
    sigma: int | None
    delta: int | None
    lt: tuple[tuple[RootOfUnity, int, int], ...]
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        key = "l_tilde" if self.mode == ORIENTED else "l"
        return {
            "mode": self.mode,
            key: self.l,
            "mu": self.mu,
            "det_class": list(self.det_class) if self.det_class is not None else None,
            "sigma": self.sigma,
            "delta": self.delta,
            "sigma_omega": [{"omega_turns": str(w.turns), "sigma": s, "nullity": n}
                            for w, s, n in self.lt],
            "notes": list(self.notes),
        }


def obstruction_vector(a: FormalClass, omegas: Sequence[RootOfUnity] | None = None,
                       _cache: dict | None = None) -> ObstructionVector:
    omegas = list(default_omegas() if omegas is None else omegas)
    gated = [w for w in omegas if w.is_prime_power]
    invs = []
    for desc, m in a.terms:
        if _cache is not None and desc.key in _cache:
            inv = _cache[desc.key]
        else:
            inv = link_invariants(desc, gated)
            if _cache is not None:
                _cache[desc.key] = inv
        invs.append((str(desc), inv, m))
    notes = []
    l = sum(m * inv.l for _, inv, m in invs)
    if a.mode == PARTLY:
        l %= 2
    mu_ = sum(m * inv.mu for _, inv, m in invs) % 2

    det_class: tuple[int, ...] | None = ()
    for name, inv, m in invs:
        if inv.det_class is None:
            det_class = None
            notes.append(f"{name}: determinant {inv.det} has no usable square class")
            break
        if m % 2:
            det_class = tuple(sorted(set(det_class) ^ set(inv.det_class)))

    if a.mode == PARTLY:
        return ObstructionVector(a.mode, l, mu_, det_class, None, None, (), tuple(notes))

    sigma = sum(m * inv.sigma for _, inv, m in invs)
    dl: int | None = 0
    for name, inv, m in invs:
        if inv.delta is None:
            dl = None
            notes.append(f"{name}: delta unavailable ({inv.delta_reason})")
            break
        dl += m * inv.delta

    lt = []
    missing = [(name, inv.lt_reason) for name, inv, _ in invs if inv.lt is None]
    for name, why in missing:
        notes.append(f"{name}: sigma_omega unavailable ({why})")
    if not missing:
        for i, w in enumerate(gated):
            if all(inv.lt[i][2] == 0 for _, inv, _ in invs):
                lt.append((w, sum(m * inv.lt[i][1] for _, inv, m in invs), 0))
    return ObstructionVector(a.mode, l, mu_, det_class, sigma, dl, tuple(lt), tuple(notes))


@dataclass(frozen=True)
class Witness:
    invariant: str
    value: object

    def __str__(self) -> str:
        return f"{self.invariant} = {self.value}"


def nontriviality_certificate(a: FormalClass, omegas: Sequence[RootOfUnity] | None = None
                              ) -> Witness | None:
    """First nonzero homomorphism value, or None ("no obstruction found")."""
    v = obstruction_vector(a, omegas)
    lname = "l_tilde" if a.mode == ORIENTED else "l"
    if v.l:
        return Witness(lname, v.l)
    if v.mu:
        return Witness("mu", v.mu)
    if v.det_class:
        n = 1
        for p in v.det_class:
            n *= p
        return Witness("det square class", n)
    if v.sigma:
        return Witness("sigma", v.sigma)
    if v.delta:
        return Witness("delta", v.delta)
    for w, s, _ in v.lt:
        if s:
            return Witness(f"sigma_omega at {w.turns} turns", s)
    return None


# ---- ranks ------------------------------------------------------------------

@dataclass(frozen=True)
class RankReport:
    free_rank: int
    two_torsion_rank: int
    free_rows: tuple[str, ...]
    free_matrix: tuple[tuple[int, ...], ...]
    free_minor: dict
    primes: tuple[int, ...]
    torsion_matrix: tuple[tuple[int, ...], ...]
    torsion_minor: dict

    def as_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "two_torsion_rank": self.two_torsion_rank,
            "free_rows": list(self.free_rows),
            "free_matrix": [list(r) for r in self.free_matrix],
            "free_minor": self.free_minor,
            "primes": list(self.primes),
            "torsion_matrix": [list(r) for r in self.torsion_matrix],
            "torsion_minor": self.torsion_minor,
        }


def _minor(M: list[list[int]], modulus: int | None) -> dict:
    """Rows and columns of a nonsingular maximal minor, with its determinant."""
    if not M or not M[0]:
        return {"rows": [], "cols": [], "det": 1}
    cols = la.pivot_columns(M, modulus)
    sub = [[r[c] for c in cols] for r in M]
    rows = la.pivot_columns(la.transpose(sub), modulus)
    minor = [sub[r] for r in rows]
    dt = la.det(minor) if minor else 1
    if modulus:
        dt %= modulus
    return {"rows": rows, "cols": cols, "det": dt}


def independence_rank(classes: Sequence[FormalClass], omegas: Sequence[RootOfUnity] | None = None,
                      rows: Iterable[str] | None = None) -> RankReport:
    """Lower bounds for the free rank and 2-torsion rank spanned by ``classes``.

    Free part: rational rank of the matrix whose columns are the classes and
    whose rows are integer homomorphisms (l~, sigma, delta, sigma_omega at each
    sampled omega). A row is used only if every class has a value for it.
    ``rows`` restricts to a subset of row names; the 2-torsion bound uses the
    determinant square classes and is skipped unless ``rows`` names ``det_class``.
    """
    rows = list(rows) if rows is not None else None
    cache: dict = {}
    vecs = [obstruction_vector(c, omegas, cache) for c in classes]
    names: list[str] = []
    table: list[list[int]] = []
    if vecs and all(v.mode == ORIENTED for v in vecs):
        cand = [("l_tilde", [v.l for v in vecs]),
                ("sigma", [v.sigma for v in vecs]),
                ("delta", [v.delta for v in vecs])]
        common = None
        for v in vecs:
            ws = {w for w, _, _ in v.lt}
            common = ws if common is None else common & ws
        for w in sorted(common or ()):
            vals = [dict((x, s) for x, s, _ in v.lt)[w] for v in vecs]
            cand.append((f"sigma_omega[{w.turns}]", vals))
        want = set(rows) if rows is not None else None
        for name, vals in cand:
            if want is not None and not (name in want or
                                         (name.startswith("sigma_omega") and "sigma_omega" in want)):
                continue
            if all(x is not None for x in vals):
                names.append(name)
                table.append(vals)
    free = la.rank(table) if table else 0

    primes: list[int] = []
    tors: list[list[int]] = []
    use_det = rows is None or "det_class" in set(rows)
    if use_det and vecs and all(v.det_class is not None for v in vecs):
        primes = sorted({p for v in vecs for p in v.det_class})
        tors = [[int(p in v.det_class) for v in vecs] for p in primes]
    two = la.rank(tors, modulus=2) if tors else 0
    return RankReport(free, two, tuple(names), tuple(map(tuple, table)), _minor(table, None),
                      tuple(primes), tuple(map(tuple, tors)), _minor(tors, 2))


def split_class(desc: MarkedLinkDescription) -> tuple[FormalClass, FormalClass]:
    """(K, -K # L) for the marked component K, as oriented classes."""
    d = desc.diagram
    K = marked_knot(d).with_mode(d.mode)
    knot = MarkedLinkDescription.of_diagram(K)
    rest = connected_sum(negate(K), d)
    knot_cls = FormalClass(((knot, 1),), d.mode)
    if d.n_components == 1:
        return knot_cls, FormalClass((), d.mode)
    return knot_cls, FormalClass(((MarkedLinkDescription.of_diagram(rest), 1),), d.mode)


def unknot_class(mode: str = ORIENTED) -> FormalClass:
    return FormalClass(((MarkedLinkDescription.of_diagram(unknot(mode)), 1),), mode)
