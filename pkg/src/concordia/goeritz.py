"""Checkerboard colourings, Goeritz matrices and the Gordon-Litherland signature.

Conventions
-----------
A crossing is *eta = +1* when its white corners are the (1,2) and (3,0)
wedges (slots numbered as in :mod:`concordia.link_core`), and *eta = -1*
when they are the (0,1) and (2,3) wedges. For an alternating diagram there
is a colouring with eta = +1 everywhere; it puts the white regions to the
left of the over-strand as it leaves each crossing, and its Goeritz matrix
is negative definite.

Off-diagonal Goeritz entries are ``G[r][r'] = sum of eta`` over crossings
joining white regions ``r`` and ``r'``; the diagonal makes every row of the
full matrix sum to zero. A crossing is of type II when its white corners are
bounded by one incoming and one outgoing strand, which happens exactly when
``eta * sign == -1``. With ``mu = sum of signs over type II crossings``,

    signature(L) = sig(G) - mu.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import _linalg as la
from .link_core import DiagramError, LinkDiagram, split_pieces, piece_crossings, \
    _trace_faces, sublink


@dataclass(frozen=True)
class Checkerboard:
    crossings: tuple[int, ...]
    faces: tuple[tuple[tuple[int, int], ...], ...]
    white: tuple[int, ...]
    black: tuple[int, ...]
    eta: dict
    white_corners: dict  # crossing -> (region, region)

    def crossing_type(self, d: LinkDiagram, k: int) -> int:
        """1 or 2 (Gordon-Litherland type) for crossing ``k`` under the orientation of ``d``."""
        return 2 if self.eta[k] * d.crossings[k].sign == -1 else 1


@dataclass(frozen=True)
class GoeritzData:
    G: list
    mu_correction: int
    region_at_infinity: int
    regions: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.G)


def _connected(d: LinkDiagram) -> list[int]:
    pieces = split_pieces(d)
    if len(pieces) != 1:
        raise DiagramError("diagram is split; handle each split piece separately")
    return pieces[0]


def checkerboard(d: LinkDiagram, flip: bool = False) -> Checkerboard:
    """Colour the regions of a connected diagram.

    By default the crossing with the smallest (sorted) PD tuple gets eta = +1,
    which for alternating diagrams is the left-of-overpass convention.
    ``flip`` exchanges the colours.
    """
    piece = _connected(d)
    xs = piece_crossings(d, piece)
    if not xs:
        # a single round circle: inside and outside, no crossings
        return Checkerboard((), (), (0,), (1,), {}, {})
    faces = _trace_faces(d, xs)
    region = {c: i for i, f in enumerate(faces) for c in f}
    color: dict[int, int] = {}  # region -> 0 white, 1 black
    eta: dict[int, int] = {}
    ref = min(xs, key=lambda k: d.crossings[k])
    todo = [(ref, 1 if not flip else -1)]
    while todo:
        k, e = todo.pop()
        if k in eta:
            if eta[k] != e:
                raise DiagramError("regions admit no checkerboard colouring")
            continue
        eta[k] = e
        white_p = (1, 3) if e == 1 else (0, 2)
        for p in range(4):
            r = region[(k, p)]
            want = 0 if p in white_p else 1
            if color.setdefault(r, want) != want:
                raise DiagramError("regions admit no checkerboard colouring")
            for k2, p2 in faces[r]:
                if k2 not in eta:
                    # corner p2 has colour `want`; odd corners white means eta = +1
                    todo.append((k2, 1 if (p2 % 2 == 1) == (want == 0) else -1))
    white = tuple(sorted(r for r, c in color.items() if c == 0))
    black = tuple(sorted(r for r, c in color.items() if c == 1))
    wc = {}
    for k in xs:
        ps = (1, 3) if eta[k] == 1 else (0, 2)
        wc[k] = (region[(k, ps[0])], region[(k, ps[1])])
    return Checkerboard(tuple(xs), tuple(faces), white, black, eta, wc)


def full_goeritz(cb: Checkerboard) -> dict:
    """Goeritz form on all white regions, as ``{(r, r'): value}``."""
    g: dict = {}
    for k in cb.crossings:
        r, s = cb.white_corners[k]
        if r == s:
            continue
        e = cb.eta[k]
        g[(r, s)] = g.get((r, s), 0) + e
        g[(s, r)] = g.get((s, r), 0) + e
        g[(r, r)] = g.get((r, r), 0) - e
        g[(s, s)] = g.get((s, s), 0) - e
    return g


def goeritz_matrix(d: LinkDiagram, cb: Checkerboard | None = None,
                   r0: int | None = None) -> GoeritzData:
    if cb is None:
        cb = checkerboard(d)
    if r0 is None:
        r0 = cb.white[0]
    if r0 not in cb.white:
        raise DiagramError(f"region {r0} is not a white region")
    g = full_goeritz(cb)
    regions = tuple(r for r in cb.white if r != r0)
    G = [[g.get((r, s), 0) for s in regions] for r in regions]
    mu_corr = sum(d.crossings[k].sign for k in cb.crossings
                  if cb.crossing_type(d, k) == 2)
    return GoeritzData(G, mu_corr, r0, regions)


def _pieces(d: LinkDiagram) -> list[LinkDiagram]:
    out = []
    for piece in split_pieces(d):
        sub = sublink(d.with_marked(piece[0]), piece)
        out.append(sub)
    return out


def signature(d: LinkDiagram, flip: bool = False, r0: int | None = None) -> int:
    """Signature of an oriented link; split diagrams are summed over pieces."""
    d.require_oriented("signature")
    if len(split_pieces(d)) > 1:
        return sum(signature(p, flip) for p in _pieces(d))
    gd = goeritz_matrix(d, checkerboard(d, flip), r0)
    return la.signature(gd.G) - gd.mu_correction


def determinant(d: LinkDiagram, flip: bool = False, r0: int | None = None) -> int:
    if len(split_pieces(d)) > 1:
        return 0
    gd = goeritz_matrix(d, checkerboard(d, flip), r0)
    return abs(la.det(gd.G))


def definite_goeritz(d: LinkDiagram) -> tuple[Checkerboard, GoeritzData, int] | None:
    """A colouring with definite Goeritz form: smallest rank first, then negative definite.

    Returns ``(colouring, data, sign)`` or None when neither colouring is definite.
    """
    found = []
    for flip in (False, True):
        cb = checkerboard(d, flip)
        gd = goeritz_matrix(d, cb)
        s = la.definiteness(gd.G) if gd.G else -1
        if s:
            found.append((cb, gd, s))
    if not found:
        return None
    found.sort(key=lambda t: (t[1].rank, t[2]))
    return found[0]
