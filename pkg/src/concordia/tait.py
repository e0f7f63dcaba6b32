"""Link diagrams as medial graphs of signed plane graphs.

The vertices of the plane graph become the white regions of the diagram and
each edge becomes one crossing; an edge weight ``+1`` puts the white regions
in the (1,2)/(3,0) corners of the crossing, ``-1`` in the (0,1)/(2,3) corners.
This is the construction used for the two-bridge and plumbing generators,
and it fixes the Goeritz matrix of the white colouring by design.
"""
from __future__ import annotations

from dataclasses import dataclass

from .link_core import LinkDiagram, from_unoriented, unknot, ORIENTED


@dataclass
class PlaneGraph:
    """A connected plane multigraph given by a rotation system.

    ``rotation[v]`` lists the darts ``(edge, end)`` at ``v`` counterclockwise,
    where ``end`` is 0 at ``edges[edge][0]`` and 1 at ``edges[edge][1]``.
    """

    edges: list[tuple[object, object, int]]
    rotation: dict

    def dart_vertex(self, dart):
        e, end = dart
        return self.edges[e][end]

    def validate(self) -> None:
        seen = []
        for v, darts in self.rotation.items():
            for d in darts:
                if self.dart_vertex(d) != v:
                    raise ValueError(f"dart {d} listed at the wrong vertex {v!r}")
                seen.append(d)
        expected = [(e, end) for e in range(len(self.edges)) for end in (0, 1)]
        if sorted(seen) != expected:
            raise ValueError("rotation system does not list every dart exactly once")

    def face_count(self) -> int:
        nxt = {}
        for v, darts in self.rotation.items():
            for i, d in enumerate(darts):
                nxt[d] = darts[(i + 1) % len(darts)]
        seen = set()
        count = 0
        for d in nxt:
            if d in seen:
                continue
            count += 1
            while d not in seen:
                seen.add(d)
                e, end = d
                d = nxt[(e, 1 - end)]
        return count

    def is_planar(self) -> bool:
        v = sum(1 for darts in self.rotation.values() if darts)
        return v - len(self.edges) + self.face_count() == 2


def tait_diagram(g: PlaneGraph, marked: int = 0, mode: str = ORIENTED) -> LinkDiagram:
    """Medial link diagram of a signed plane graph."""
    g.validate()
    if not g.edges:
        return unknot(mode)
    if not g.is_planar():
        raise ValueError("rotation system is not planar")
    pos = {}
    for v, darts in g.rotation.items():
        for i, d in enumerate(darts):
            pos[d] = (v, i)

    def nxt(d):
        v, i = pos[d]
        darts = g.rotation[v]
        return darts[(i + 1) % len(darts)]

    def prv(d):
        v, i = pos[d]
        darts = g.rotation[v]
        return darts[(i - 1) % len(darts)]

    # the corner following dart d counterclockwise carries arc number arc[d]
    arc = {d: n + 1 for n, d in enumerate(sorted(pos))}
    tuples = []
    for e, (_, _, eta) in enumerate(g.edges):
        d, d2 = (e, 0), (e, 1)
        ne, nw, sw, se = arc[prv(d2)], arc[d], arc[prv(d)], arc[d2]
        tuples.append((ne, nw, sw, se) if eta == 1 else (nw, sw, se, ne))
    return from_unoriented(tuples, marked=marked, mode=mode)
