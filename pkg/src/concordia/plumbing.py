"""Star-shaped plumbing trees and the Montesinos links they describe.

The link is drawn as the medial diagram of a plane graph whose vertices are
the tree vertices plus one extra vertex ``r0``. Every tree edge becomes one
crossing with eta = -1, and vertex ``i`` of weight ``w_i`` and degree
``deg_i`` is joined to ``r0`` by ``|w_i - deg_i|`` edges carrying
eta = -sign(w_i - deg_i). Deleting ``r0``, the Goeritz matrix of that
colouring is ``P'``, the plumbing matrix with its off-diagonal signs flipped;
on a tree this is congruent to ``P``. So the double branched cover bounds
the plumbing itself, with the orientation the weights prescribe.
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from itertools import product

from . import _linalg as la
from .goeritz import checkerboard, goeritz_matrix, signature
from .lattice import delta, spin_classes
from .link_core import LinkDiagram, ORIENTED, orientation_variants
from .tait import PlaneGraph, tait_diagram


@dataclass(frozen=True)
class PlumbingTree:
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.weights)
        if n == 0:
            raise ValueError("empty tree")
        if any(w == 0 for w in self.weights):
            raise ValueError("weights must be nonzero")
        if len(self.edges) != n - 1:
            raise ValueError("a tree on n vertices has n - 1 edges")
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge {(u, v)}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("edges contain a cycle")
            parent[ru] = rv

    @property
    def n(self) -> int:
        return len(self.weights)

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def neighbours(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    @property
    def is_star(self) -> bool:
        return sum(self.degree(v) > 2 for v in range(self.n)) <= 1

    @property
    def centre(self) -> int:
        return max(range(self.n), key=lambda v: (self.degree(v), -v))

    def bad_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.weights[v] < self.degree(v)]


_TREE = re.compile(r"vertices\s*:\s*(\[.*?\])\s*;\s*edges\s*:\s*(\[.*\])", re.S)


def parse_tree(text: str) -> PlumbingTree:
    m = _TREE.search(text)
    if not m:
        raise ValueError("expected 'vertices: [...]; edges: [...]'")
    try:
        ws = ast.literal_eval(m.group(1))
        es = ast.literal_eval(m.group(2))
    except (ValueError, SyntaxError) as exc:
        raise ValueError(f"bad tree file: {exc}") from exc
    return PlumbingTree(tuple(int(w) for w in ws), tuple((int(a), int(b)) for a, b in es))


def render_tree(t: PlumbingTree) -> str:
    return f"vertices: {list(t.weights)}; edges: {[tuple(e) for e in t.edges]}"


def plumbing_matrix(t: PlumbingTree) -> list[list[int]]:
    P = [[0] * t.n for _ in range(t.n)]
    for v, w in enumerate(t.weights):
        P[v][v] = w
    for a, b in t.edges:
        P[a][b] = P[b][a] = 1
    return P


def plumbing_graph(t: PlumbingTree) -> PlaneGraph:
    """Signed plane graph whose medial diagram is the plumbed-bands link."""
    R0 = "r0"
    edges: list = []
    tree_darts: dict[int, dict[int, tuple]] = {v: {} for v in range(t.n)}
    for a, b in t.edges:
        e = len(edges)
        edges.append((a, b, -1))
        tree_darts[a][b] = (e, 0)
        tree_darts[b][a] = (e, 1)
    outer: dict[int, list] = {}
    for v, w in enumerate(t.weights):
        k = w - t.degree(v)
        outer[v] = []
        for _ in range(abs(k)):
            outer[v].append((len(edges), 0))
            edges.append((v, R0, -1 if k > 0 else 1))

    # depth-first layout from the centre: parent, children left to right, then r0 corner
    root = t.centre
    order: list[int] = []
    rotation: dict = {}

    def place(v, parent):
        order.append(v)
        kids = [c for c in t.neighbours(v) if c != parent]
        darts = ([tree_darts[v][parent]] if parent is not None else [])
        darts += [tree_darts[v][c] for c in kids]
        rotation[v] = darts + outer[v]
        for c in kids:
            place(c, v)

    place(root, None)
    # the r0 corners are met along the contour of the tree; try both senses
    contour = _contour(t, root)
    for rev_all, rev_block in product((False, True), repeat=2):
        seq = list(reversed(contour)) if rev_all else contour
        r0 = []
        for v in seq:
            block = [(e, 1) for e, _ in outer[v]]
            r0 += list(reversed(block)) if rev_block else block
        rot = dict(rotation)
        if r0:
            rot[R0] = r0
        g = PlaneGraph(edges, rot)
        g.validate()
        if g.is_planar():
            return g
    raise AssertionError("no planar rotation for r0")


def _contour(t: PlumbingTree, root: int) -> list[int]:
    """Vertices in the order their last corner is passed walking around the tree."""
    out: list[int] = []

    def walk(v, parent):
        for c in t.neighbours(v):
            if c != parent:
                walk(c, v)
        out.append(v)

    walk(root, None)
    return out


def montesinos_diagram(t: PlumbingTree, marked: int = 0, mode: str = ORIENTED,
                       require_star: bool = True) -> LinkDiagram:
    if require_star and not t.is_star:
        raise ValueError("only star-shaped trees are supported")
    return tait_diagram(plumbing_graph(t), marked=marked, mode=mode)


def tree_colouring_flip(d: LinkDiagram, t: PlumbingTree) -> bool:
    """The chessboard colouring of ``montesinos_diagram(t)`` whose white regions are the tree vertices.

    Goeritz matrices for different deleted regions are congruent, so matching
    the eta counts, determinant and definiteness against ``P`` identifies it.
    """
    P = plumbing_matrix(t)
    n_neg = t.n - 1 + sum(w - t.degree(v) for v, w in enumerate(t.weights) if w > t.degree(v))
    for flip in (False, True):
        cb = checkerboard(d, flip)
        if sum(1 for e in cb.eta.values() if e == -1) != n_neg:
            continue
        G = goeritz_matrix(d, cb).G
        if (len(G) == t.n and abs(la.det(G)) == abs(la.det(P))
                and la.definiteness(G) == la.definiteness(P)):
            return flip
    raise AssertionError("tree colouring not found")


@dataclass(frozen=True)
class SweepEntry:
    reversed: tuple[int, ...]
    signature: int
    delta: int | None
    char_class: tuple[int, ...] | None


def quasiorientation_sweep(d: LinkDiagram, flip: bool | None = None,
                           sharp: bool = False) -> list[SweepEntry]:
    """(sigma, delta) over the 2^(m-1) quasi-orientations of ``d``."""
    out = []
    classes = dict(spin_classes(d, flip)) if flip is not None else {}
    for rev, v in orientation_variants(d):
        s = signature(v)
        de = delta(v, sharp=sharp, flip=flip)
        c = classes.get(tuple(rev))
        out.append(SweepEntry(tuple(rev), s, de, c.rep if c else None))
    return out


def plumbing_sweep(t: PlumbingTree) -> tuple[LinkDiagram, list[SweepEntry]]:
    """Sweep over quasi-orientations using the tree's own (sharp) colouring."""
    if len(t.bad_vertices()) > 1:
        raise ValueError("more than one bad vertex: the plumbing form need not be sharp")
    d = montesinos_diagram(t)
    flip = tree_colouring_flip(d, t)
    return d, quasiorientation_sweep(d, flip=flip, sharp=True)


L4_TREE = PlumbingTree((1, 2, 4, 6), ((0, 1), (0, 2), (0, 3)))
