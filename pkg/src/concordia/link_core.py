"""Planar-diagram links with orientations and a marked component.

A crossing is stored as ``X(a, b, c, d; s)``: the four arcs around the
crossing listed counterclockwise starting from the incoming under-strand,
so the under-strand runs ``a -> c``. The sign ``s`` fixes the direction of
the over-strand: ``+1`` means it runs ``d -> b`` (left to right across the
upward under-strand), ``-1`` means ``b -> d``. With this encoding every arc
carries an orientation and components are recovered by arc-following.

Components that never meet a crossing are *free loops*: a single arc id that
appears in no crossing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Sequence

ORIENTED = "oriented"
PARTLY = "partly"
MODES = (ORIENTED, PARTLY)


class DiagramError(ValueError):
    """Raised for malformed or inconsistent diagram data."""


class OrientationError(ValueError):
    """Raised when a result would depend on orientations the mode forgets."""


@dataclass(frozen=True, order=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.arcs) != 4:
            raise DiagramError(f"crossing needs 4 arcs, got {self.arcs!r}")
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.sign!r}")

    @property
    def over_in(self) -> int:
        """Slot position where the over-strand enters."""
        return 3 if self.sign == 1 else 1

    @property
    def incoming_slots(self) -> tuple[int, int]:
        return (0, self.over_in)

    def successor_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = self.arcs
        over = (d, b) if self.sign == 1 else (b, d)
        return (a, c), over

    def rotated(self) -> "Crossing":
        a, b, c, d = self.arcs
        return Crossing((c, d, a, b), self.sign)

    def relabeled(self, mapping) -> "Crossing":
        return Crossing(tuple(mapping[x] for x in self.arcs), self.sign)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    marked: int = 0
    mode: str = ORIENTED
    _comp_of: dict = field(default=None, compare=False, repr=False, hash=False)

    # construction -----------------------------------------------------------

    @classmethod
    def build(cls, crossings: Iterable[Crossing], free_loops: Iterable[int] = (),
              order: Sequence[Sequence[int]] | None = None, marked: int = 0,
              mode: str = ORIENTED) -> "LinkDiagram":
        """Validate crossings, follow arcs into components and return a diagram.

        ``order`` optionally lists (a subset of) arcs per component, fixing the
        component numbering; otherwise components are ordered by smallest arc.
        """
        crossings = tuple(crossings)
        free_loops = tuple(free_loops)
        if mode not in MODES:
            raise DiagramError(f"unknown orientation mode {mode!r}")
        counts: dict[int, int] = {}
        for x in crossings:
            for a in x.arcs:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise DiagramError(f"arc multiplicity: arcs {bad} do not appear exactly twice")
        for a in free_loops:
            if a in counts:
                raise DiagramError(f"arc multiplicity: free loop arc {a} also used in a crossing")
        if len(set(free_loops)) != len(free_loops):
            raise DiagramError("arc multiplicity: repeated free loop arc")
        succ: dict[int, int] = {}
        for x in crossings:
            for src, dst in x.successor_pairs():
                if src in succ:
                    raise DiagramError(f"orientation inconsistent: arc {src} enters two crossings")
                succ[src] = dst
        if len(set(succ.values())) != len(succ):
            raise DiagramError("orientation inconsistent: an arc leaves two crossings")
        cycles = []
        seen: set[int] = set()
        for start in sorted(succ):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            nxt = succ[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = succ[nxt]
            cycles.append(tuple(cyc))
        cycles.extend((a,) for a in free_loops)
        if not cycles:
            raise DiagramError("diagram has no components")
        if order is not None:
            cycles = _order_cycles(cycles, order)
        else:
            cycles.sort(key=min)
        if not 0 <= marked < len(cycles):
            raise DiagramError(f"marked component {marked} does not exist")
        d = cls(crossings, tuple(cycles), marked, mode)
        d._check_planar()
        return d

    def __post_init__(self):
        comp_of = {a: i for i, comp in enumerate(self.components) for a in comp}
        object.__setattr__(self, "_comp_of", comp_of)

    def _check_planar(self) -> None:
        for piece in split_pieces(self):
            xs = piece_crossings(self, piece)
            if not xs:
                continue
            nfaces = len(_trace_faces(self, xs))
            if nfaces != len(xs) + 2:
                raise DiagramError(
                    f"diagram is not planar: {len(xs)} crossings but {nfaces} faces")

    # basic queries ----------------------------------------------------------

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def component_of(self, arc: int) -> int:
        return self._comp_of[arc]

    def is_free_loop(self, comp: int) -> bool:
        arcs = self.components[comp]
        return len(arcs) == 1 and all(arcs[0] not in x.arcs for x in self.crossings)

    def strand_components(self, k: int) -> tuple[int, int]:
        """(under component, over component) at crossing ``k``."""
        x = self.crossings[k]
        return self._comp_of[x.arcs[0]], self._comp_of[x.arcs[1]]

    def slots(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for k, x in enumerate(self.crossings):
            for p, a in enumerate(x.arcs):
                out.setdefault(a, []).append((k, p))
        return out

    def arcs(self) -> list[int]:
        return [a for comp in self.components for a in comp]

    def with_mode(self, mode: str) -> "LinkDiagram":
        if mode not in MODES:
            raise DiagramError(f"unknown orientation mode {mode!r}")
        return replace(self, mode=mode)

    def with_marked(self, marked: int) -> "LinkDiagram":
        if not 0 <= marked < self.n_components:
            raise DiagramError(f"marked component {marked} does not exist")
        return replace(self, marked=marked)

    def require_oriented(self, what: str) -> None:
        if self.mode != ORIENTED:
            raise OrientationError(f"{what} needs a marked oriented link (mode={self.mode})")

    def __str__(self) -> str:
        return render_pd(self)


def _order_cycles(cycles, order):
    out = []
    used = set()
    for arcs in order:
        hits = {i for i, cyc in enumerate(cycles) if set(arcs) & set(cyc)}
        if len(hits) != 1:
            raise DiagramError(f"component listing {list(arcs)} does not match one component")
        i = hits.pop()
        if not set(arcs) <= set(cycles[i]):
            raise DiagramError(f"component listing {list(arcs)} mixes components")
        if i in used:
            raise DiagramError(f"component listed twice: {list(arcs)}")
        used.add(i)
        out.append(cycles[i])
    if len(out) != len(cycles):
        raise DiagramError(
            f"comps lists {len(out)} components but the diagram has {len(cycles)}")
    return out


def unknot(mode: str = ORIENTED) -> LinkDiagram:
    return LinkDiagram.build([], free_loops=[1], mode=mode)


def unlink(m: int, mode: str = ORIENTED) -> LinkDiagram:
    return LinkDiagram.build([], free_loops=range(1, m + 1), mode=mode)


# faces and pieces -------------------------------------------------------------

def split_pieces(d: LinkDiagram) -> list[list[int]]:
    """Groups of component indices whose union is a connected sub-diagram."""
    parent = list(range(d.n_components))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for k in range(d.n_crossings):
        u, o = d.strand_components(k)
        parent[find(u)] = find(o)
    groups: dict[int, list[int]] = {}
    for i in range(d.n_components):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def piece_crossings(d: LinkDiagram, piece: Sequence[int]) -> list[int]:
    ps = set(piece)
    return [k for k in range(d.n_crossings) if d.strand_components(k)[0] in ps]


def is_split(d: LinkDiagram) -> bool:
    return len(split_pieces(d)) > 1


def _trace_faces(d: LinkDiagram, xs: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    """Faces of the sub-diagram on crossings ``xs`` as cycles of corners.

    Corner ``(k, p)`` is the wedge at crossing ``k`` between slots ``p`` and
    ``p + 1``.
    """
    slots = d.slots()
    xset = set(xs)

    def other_end(k, p):
        a = d.crossings[k].arcs[p]
        ends = [s for s in slots[a] if s != (k, p)]
        end = ends[0]
        assert end[0] in xset
        return end

    faces = []
    seen = set()
    for k in sorted(xset):
        for p in range(4):
            if (k, p) in seen:
                continue
            face = []
            corner = (k, p)
            while corner not in seen:
                seen.add(corner)
                face.append(corner)
                k2, p2 = other_end(*corner)
                corner = (k2, (p2 - 1) % 4)
            faces.append(tuple(face))
    return faces


def faces(d: LinkDiagram, piece: Sequence[int] | None = None):
    if piece is None:
        pieces = split_pieces(d)
        if len(pieces) != 1:
            raise DiagramError("faces() of a split diagram needs an explicit piece")
        piece = pieces[0]
    return _trace_faces(d, piece_crossings(d, piece))


def is_alternating(d: LinkDiagram) -> bool:
    """True when every arc leaves one crossing and enters the next in opposite roles."""
    slots = d.slots()
    for a, ends in slots.items():
        roles = {p % 2 for _, p in ends}
        if len(roles) != 2:
            return False
    return True


# orientation bookkeeping ------------------------------------------------------

def reverse_components(d: LinkDiagram, comps: Iterable[int]) -> LinkDiagram:
    rev = set(comps)
    if not rev:
        return d
    new = []
    for k, x in enumerate(d.crossings):
        u, o = d.strand_components(k)
        if u in rev and o in rev:
            new.append(x.rotated())
        elif u in rev:
            r = x.rotated()
            new.append(Crossing(r.arcs, -r.sign))
        elif o in rev:
            new.append(Crossing(x.arcs, -x.sign))
        else:
            new.append(x)
    comps = tuple(
        (c[0],) + tuple(reversed(c[1:])) if i in rev else c
        for i, c in enumerate(d.components))
    return LinkDiagram(tuple(new), comps, d.marked, d.mode)


def orientation_variants(d: LinkDiagram) -> list[tuple[tuple[int, ...], LinkDiagram]]:
    """All orientations up to overall reversal, fixing the marked component.

    Returns ``2**(m-1)`` pairs ``(reversed_components, diagram)``.
    """
    others = [i for i in range(d.n_components) if i != d.marked]
    out = []
    for flags in product((False, True), repeat=len(others)):
        rev = tuple(i for i, f in zip(others, flags) if f)
        out.append((rev, reverse_components(d, rev)))
    return out


# the homomorphisms l, l~ and mu -----------------------------------------------

def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    if i == j:
        raise DiagramError("linking number needs two distinct components")
    for c in (i, j):
        if not 0 <= c < d.n_components:
            raise DiagramError(f"component {c} does not exist")
    if d.mode == PARTLY and d.marked not in (i, j):
        raise OrientationError("linking number of two unmarked components in partly oriented mode")
    total = 0
    for k, x in enumerate(d.crossings):
        if set(d.strand_components(k)) == {i, j}:
            total += x.sign
    assert total % 2 == 0
    return total // 2


def total_linking(d: LinkDiagram) -> int:
    """Total linking number with the marked component; reduced mod 2 in partly mode."""
    total = sum(linking_number(d, d.marked, j)
                for j in range(d.n_components) if j != d.marked)
    return total % 2 if d.mode == PARTLY else total


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    m = d.n_components
    out = [[0] * m for _ in range(m)]
    for k, x in enumerate(d.crossings):
        u, o = d.strand_components(k)
        if u != o:
            out[u][o] += x.sign
            out[o][u] += x.sign
    return [[v // 2 for v in row] for row in out]


def mu(d: LinkDiagram) -> int:
    return (1 + d.n_components) % 2


# monoid structure -------------------------------------------------------------

def negate(d: LinkDiagram) -> LinkDiagram:
    """Mirror image with every orientation reversed; the marking is kept."""
    new = []
    for x in d.crossings:
        a, b, c, dd = x.arcs
        if x.sign == 1:
            new.append(Crossing((b, c, dd, a), -1))
        else:
            new.append(Crossing((dd, a, b, c), 1))
    comps = tuple((c[0],) + tuple(reversed(c[1:])) for c in d.components)
    return LinkDiagram(tuple(new), comps, d.marked, d.mode)


def _head_slot(x: Crossing, arc: int) -> int | None:
    for p in x.incoming_slots:
        if x.arcs[p] == arc:
            return p
    return None


def connected_sum(a: LinkDiagram, b: LinkDiagram) -> LinkDiagram:
    """Splice the marked components at their smallest arcs."""
    if a.mode != b.mode:
        raise DiagramError(f"connected sum of {a.mode} and {b.mode} diagrams")
    shift = max(a.arcs()) + 1 - min(b.arcs())
    b = relabel(b, {x: x + shift for x in b.arcs()})
    e = min(a.components[a.marked])
    f = min(b.components[b.marked])
    a_free = a.is_free_loop(a.marked)
    b_free = b.is_free_loop(b.marked)
    a_others = [c for i, c in enumerate(a.components) if i != a.marked]
    b_others = [c for i, c in enumerate(b.components) if i != b.marked]
    xs_a = list(a.crossings)
    xs_b = list(b.crossings)
    if a_free and b_free:
        head = [e]
    elif a_free:
        head = list(b.components[b.marked])
    elif b_free:
        head = list(a.components[a.marked])
    else:
        qa = next(k for k, x in enumerate(xs_a) if _head_slot(x, e) is not None)
        sb = next(k for k, x in enumerate(xs_b) if _head_slot(x, f) is not None)
        pa, pb = _head_slot(xs_a[qa], e), _head_slot(xs_b[sb], f)
        arcs = list(xs_a[qa].arcs)
        arcs[pa] = f
        xs_a[qa] = Crossing(tuple(arcs), xs_a[qa].sign)
        arcs = list(xs_b[sb].arcs)
        arcs[pb] = e
        xs_b[sb] = Crossing(tuple(arcs), xs_b[sb].sign)
        head = [e, f]
    used = {x for c in xs_a + xs_b for x in c.arcs}
    loops = [c[0] for c in a_others + b_others if c[0] not in used]
    if a_free and b_free:
        loops.insert(0, e)
    order = [head] + [list(c) for c in a_others + b_others]
    return LinkDiagram.build(xs_a + xs_b, free_loops=loops, order=order,
                             marked=0, mode=a.mode)


def relabel(d: LinkDiagram, mapping: dict[int, int]) -> LinkDiagram:
    xs = tuple(x.relabeled(mapping) for x in d.crossings)
    comps = tuple(tuple(mapping[a] for a in c) for c in d.components)
    return LinkDiagram(xs, comps, d.marked, d.mode)


def normalize_labels(d: LinkDiagram) -> LinkDiagram:
    """Renumber arcs 1..N along the components in order."""
    mapping = {}
    for comp in d.components:
        k = comp.index(min(comp))
        for a in comp[k:] + comp[:k]:
            mapping[a] = len(mapping) + 1
    return relabel(d, mapping)


def sublink(d: LinkDiagram, keep: Iterable[int]) -> LinkDiagram:
    """Forget every component not in ``keep``; arcs through dropped crossings merge."""
    keep = sorted(set(keep))
    if not keep:
        raise DiagramError("sublink needs at least one component")
    if d.marked not in keep:
        raise DiagramError("sublink must keep the marked component")
    kset = set(keep)
    parent = {a: a for a in d.arcs()}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    kept = []
    for k, x in enumerate(d.crossings):
        u, o = d.strand_components(k)
        if u in kset and o in kset:
            kept.append(x)
            continue
        for (src, dst), comp in zip(x.successor_pairs(), (u, o)):
            if comp in kset:
                union(src, dst)
    xs = [Crossing(tuple(find(a) for a in x.arcs), x.sign) for x in kept]
    used = {a for x in xs for a in x.arcs}
    loops = []
    order = []
    for i in keep:
        reps = sorted({find(a) for a in d.components[i]})
        if not (set(reps) & used):
            loops.append(reps[0])
        order.append(reps[:1])
    return LinkDiagram.build(xs, free_loops=loops, order=order,
                             marked=keep.index(d.marked), mode=d.mode)


def marked_knot(d: LinkDiagram) -> LinkDiagram:
    """The marked component on its own, as a knot diagram."""
    return sublink(d, [d.marked]).with_mode(ORIENTED)


# construction helpers ---------------------------------------------------------

def from_tuples(tuples: Sequence[Sequence[int]], signs: Sequence[int | None] | None = None,
                free_loops: Iterable[int] = (), order=None, marked: int = 0,
                mode: str = ORIENTED) -> LinkDiagram:
    """Build a diagram from PD 4-tuples, inferring any missing crossing signs.

    Each tuple starts at the incoming under-strand. A missing sign is deduced
    from the requirement that every arc enters exactly one crossing; arcs on
    components that only ever pass over are oriented arbitrarily but
    consistently.
    """
    tuples = [tuple(t) for t in tuples]
    signs = list(signs) if signs is not None else [None] * len(tuples)
    if len(signs) != len(tuples):
        raise DiagramError("signs and crossings differ in length")
    counts: dict[int, int] = {}
    for t in tuples:
        if len(t) != 4:
            raise DiagramError(f"crossing needs 4 arcs, got {t!r}")
        for a in t:
            counts[a] = counts.get(a, 0) + 1
    bad = sorted(a for a, k in counts.items() if k != 2)
    if bad:
        raise DiagramError(f"arc multiplicity: arcs {bad} do not appear exactly twice")
    enters: dict[int, int] = {}
    leaves: dict[int, int] = {}

    def note(arc, table):
        table[arc] = table.get(arc, 0) + 1
        if table[arc] > 1:
            raise DiagramError(f"orientation inconsistent at arc {arc}")

    def fix(k, s):
        signs[k] = s
        a, b, c, d = tuples[k]
        src, dst = (d, b) if s == 1 else (b, d)
        note(src, enters)
        note(dst, leaves)

    for k, (a, b, c, d) in enumerate(tuples):
        note(a, enters)
        note(c, leaves)
    for k, s in enumerate(signs):
        if s is not None:
            fix(k, s)
    pending = [k for k, s in enumerate(signs) if s is None]
    while pending:
        progress = False
        for k in list(pending):
            a, b, c, d = tuples[k]
            if enters.get(b) or leaves.get(d):
                fix(k, 1)  # b's head or d's tail is elsewhere: over runs d -> b
                pending.remove(k)
                progress = True
            elif enters.get(d) or leaves.get(b):
                fix(k, -1)
                pending.remove(k)
                progress = True
        if not progress:
            k = pending.pop(0)
            fix(k, 1)
    xs = [Crossing(t, s) for t, s in zip(tuples, signs)]
    return LinkDiagram.build(xs, free_loops=free_loops, order=order,
                             marked=marked, mode=mode)


def braid_closure(word: Sequence[int], n_strands: int | None = None,
                  marked: int = 0, mode: str = ORIENTED) -> LinkDiagram:
    """Diagram of the closure of a braid word (generator i = +i, inverse = -i).

    Strands run upward; a positive letter is a positive crossing.
    """
    word = [int(w) for w in word]
    if any(w == 0 for w in word):
        raise DiagramError("braid generators are nonzero integers")
    n = max([abs(w) + 1 for w in word] + [n_strands or 1])
    current = list(range(1, n + 1))
    nxt = n + 1
    xs = []
    for w in word:
        i = abs(w) - 1
        x, y = current[i], current[i + 1]
        xnew, ynew = nxt, nxt + 1
        nxt += 2
        if w > 0:
            xs.append(((y, xnew, ynew, x), 1))
            current[i], current[i + 1] = ynew, xnew
        else:
            xs.append(((x, y, xnew, ynew), -1))
            current[i], current[i + 1] = ynew, xnew
    # close up: final arc at position i is the initial arc at position i
    mapping = {final: start for start, final in zip(range(1, n + 1), current)}
    crossings = [Crossing(tuple(mapping.get(a, a) for a in t), s) for t, s in xs]
    used = {a for x in crossings for a in x.arcs}
    loops = [a for a in range(1, n + 1) if a not in used]
    d = LinkDiagram.build(crossings, free_loops=loops, marked=0, mode=mode)
    d = normalize_labels(d)
    return d.with_marked(marked)


# PD text format ---------------------------------------------------------------

_X_RE = re.compile(r"X\s*[\[(]\s*([^\])]*?)\s*[\])]")
_KEY_RE = re.compile(r"(\w+)\s*=\s*(\[[^=]*\]|\S+)")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``PD[X(a,b,c,d;s), ...] comps=[[..],..] orient=[+,-] marked=1 mode=oriented``.

    ``comps`` lists arcs per component (1-based component numbering follows
    this list); arcs listed there but absent from every crossing are free
    loops. ``orient`` flips components relative to the orientation encoded in
    the crossings. Crossing signs may be omitted and are then inferred.
    """
    body, rest = _split_pd(text.strip())
    tuples, signs = [], []
    consumed = _X_RE.sub("", body).replace(",", "").strip()
    if consumed:
        raise DiagramError(f"malformed PD text near {consumed[:20]!r}")
    for xm in _X_RE.finditer(body):
        inner = xm.group(1)
        arcs_txt, _, sign_txt = inner.partition(";")
        try:
            arcs = [int(t) for t in arcs_txt.replace(" ", "").split(",") if t]
        except ValueError:
            raise DiagramError(f"malformed crossing X({inner})") from None
        if len(arcs) != 4:
            raise DiagramError(f"malformed crossing X({inner}): need 4 arcs")
        sign_txt = sign_txt.strip()
        if sign_txt in ("", None):
            signs.append(None)
        elif sign_txt in ("+", "+1", "1"):
            signs.append(1)
        elif sign_txt in ("-", "-1"):
            signs.append(-1)
        else:
            raise DiagramError(f"malformed crossing sign {sign_txt!r}")
        tuples.append(arcs)
    opts = dict(_KEY_RE.findall(rest))
    leftover = _KEY_RE.sub("", rest).strip()
    if leftover:
        raise DiagramError(f"malformed PD options near {leftover[:20]!r}")
    if "marked" not in opts:
        raise DiagramError("unmarked diagram: give marked=<component>")
    try:
        marked = int(opts["marked"]) - 1
    except ValueError:
        raise DiagramError(f"malformed marked={opts['marked']!r}") from None
    mode = opts.get("mode", ORIENTED)
    order = None
    loops: list[int] = []
    if "comps" in opts:
        try:
            order = _parse_int_lists(opts["comps"])
        except ValueError:
            raise DiagramError(f"malformed comps={opts['comps']!r}") from None
        used = {a for t in tuples for a in t}
        for arcs in order:
            free = [a for a in arcs if a not in used]
            if free and len(arcs) != 1:
                raise DiagramError(f"component {arcs} mixes free and crossing arcs")
            loops.extend(free)
    d = from_tuples(tuples, signs, free_loops=loops, order=order, marked=marked, mode=mode)
    if "orient" in opts:
        flags = [t.strip() for t in opts["orient"].strip("[]").split(",") if t.strip()]
        if len(flags) != d.n_components or any(f not in "+-" for f in flags):
            raise DiagramError(f"malformed orient={opts['orient']!r}")
        d = reverse_components(d, [i for i, f in enumerate(flags) if f == "-"])
    return d


def _split_pd(text: str) -> tuple[str, str]:
    m = re.match(r"PD\s*\[", text)
    if not m:
        raise DiagramError(f"malformed PD text: {text[:40]!r}")
    depth = 1
    for i in range(m.end(), len(text)):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                return text[m.end():i], text[i + 1:]
    raise DiagramError("malformed PD text: unbalanced brackets")


def _parse_int_lists(txt: str) -> list[list[int]]:
    inner = txt.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ValueError(txt)
    groups = re.findall(r"\[([^\[\]]*)\]", inner[1:-1])
    return [[int(t) for t in g.split(",") if t.strip()] for g in groups]


def render_pd(d: LinkDiagram, sort: bool = False) -> str:
    xs = sorted(d.crossings) if sort else d.crossings
    body = ", ".join(
        "X({},{},{},{};{})".format(*x.arcs, "+" if x.sign == 1 else "-") for x in xs)
    comps = ",".join("[" + ",".join(map(str, c)) + "]" for c in d.components)
    orient = ",".join("+" for _ in d.components)
    return (f"PD[{body}] comps=[{comps}] orient=[{orient}] "
            f"marked={d.marked + 1} mode={d.mode}")


def canonical_form(d: LinkDiagram) -> bytes:
    """Cache key; independent of the order in which crossings were listed."""
    comps = ",".join("[" + ",".join(map(str, _rotate_min(c))) + "]" for c in d.components)
    body = ",".join("X({},{},{},{};{})".format(*x.arcs, x.sign) for x in sorted(d.crossings))
    return f"PD[{body}]|{comps}|{d.marked}|{d.mode}".encode()


def _rotate_min(c):
    k = c.index(min(c))
    return c[k:] + c[:k]


def same_diagram(a: LinkDiagram, b: LinkDiagram) -> bool:
    """Equality up to crossing order and cyclic rotation of component listings."""
    return canonical_form(a) == canonical_form(b)


def isomorphic(a: LinkDiagram, b: LinkDiagram) -> bool:
    """Equality up to arc relabelling (brute force over component start arcs)."""
    if (a.n_crossings, a.n_components, a.marked, a.mode) != \
            (b.n_crossings, b.n_components, b.marked, b.mode):
        return False
    target = canonical_form(normalize_labels(b))
    for starts in product(*[range(len(c)) for c in a.components]):
        comps = tuple(c[s:] + c[:s] for c, s in zip(a.components, starts))
        mapping = {}
        for comp in comps:
            for x in comp:
                mapping[x] = len(mapping) + 1
        if canonical_form(relabel(a, mapping)) == target:
            return True
    return False



def from_unoriented(tuples: Sequence[Sequence[int]], free_loops: Iterable[int] = (),
                    marked: int = 0, mode: str = ORIENTED) -> LinkDiagram:
    """Orient a diagram given by counterclockwise 4-tuples with the under-strand at slots 0 and 2.

    Each component is oriented by walking from its smallest arc towards that
    arc's first listed slot.
    """
    tuples = [tuple(t) for t in tuples]
    slots: dict[int, list[tuple[int, int]]] = {}
    for k, t in enumerate(tuples):
        for p, a in enumerate(t):
            slots.setdefault(a, []).append((k, p))
    bad = sorted(a for a, s in slots.items() if len(s) != 2)
    if bad:
        raise DiagramError(f"arc multiplicity: arcs {bad} do not appear exactly twice")
    incoming: dict[int, set[int]] = {k: set() for k in range(len(tuples))}
    visited: set[int] = set()
    for start in sorted(slots):
        if start in visited:
            continue
        arc, head = start, slots[start][0]
        while arc not in visited:
            visited.add(arc)
            k, p = head
            incoming[k].add(p)
            q = (p + 2) % 4
            arc = tuples[k][q]
            head = next(s for s in slots[arc] if s != (k, q))
    xs = []
    for k, t in enumerate(tuples):
        under_in = 0 if 0 in incoming[k] else 2
        over_in = 1 if 1 in incoming[k] else 3
        if under_in == 2:
            t = t[2:] + t[:2]
            over_in = (over_in + 2) % 4
        xs.append(Crossing(t, 1 if over_in == 3 else -1))
    d = LinkDiagram.build(xs, free_loops=free_loops, marked=0, mode=mode)
    return normalize_labels(d).with_marked(marked)
