"""Planar diagrams of cycles inside a book representation.

The projection is onto the plane of the boundary circle, viewed from the top
sheet, so of two crossing chords the one in the lower-numbered sheet passes
over.  Vertices sit at exact integer points in convex position, clockwise in
label order, and crossing positions along a chord are exact fractions.  No
three pairwise-crossing chords of K6 meet in one point with these
coordinates (checked by :func:`general_position`).

Crossings carry PD codes ``X[i, j, k, l]``: ``i`` is the incoming under
segment and the labels run counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple
from fractions import Fraction
from itertools import combinations

from .graph import Cycle, DomainError, Edge, TrianglePair, chords_cross, interior_edges
from .model import BookRep, as_rep, validate


def vertex_point(v: int) -> tuple[int, int]:
    # points on y = -x^2 read left to right are clockwise
    return (v, -v * v)


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _cross(p, q) -> int:
    return p[0] * q[1] - p[1] * q[0]


def _intersection(tail1, head1, tail2, head2) -> tuple[Fraction, Fraction]:
    """Parameters (s, t) of the meeting point along segments 1 and 2."""
    p, q = vertex_point(tail1), vertex_point(tail2)
    r = _sub(vertex_point(head1), p)
    d = _sub(vertex_point(head2), q)
    denom = _cross(r, d)
    if denom == 0:
        raise DomainError("parallel chords")
    qp = _sub(q, p)
    return Fraction(_cross(qp, d), denom), Fraction(_cross(qp, r), denom)


def general_position(n: int = 6) -> bool:
    """True iff no three pairwise-crossing interior chords are concurrent."""
    edges = interior_edges(n)
    for e, f, g in combinations(edges, 3):
        if not (chords_cross(e, f, n) and chords_cross(f, g, n) and chords_cross(e, g, n)):
            continue
        s, _ = _intersection(e.a, e.b, f.a, f.b)
        s2, _ = _intersection(e.a, e.b, g.a, g.b)
        if s == s2:
            return False
    return True


@dataclass(frozen=True)
class Crossing:
    over_edge: Edge
    under_edge: Edge
    sign: int
    over_component: int
    under_component: int
    over_position: int  # index of the over pass along its component's traversal
    under_position: int
    pd: tuple[int, int, int, int]

    def __str__(self):
        return f"over={self.over_edge} under={self.under_edge} sign={self.sign:+d}"

    @property
    def mixed(self) -> bool:
        return self.over_component != self.under_component


@dataclass(frozen=True)
class Diagram:
    """Oriented diagram of one or two closed components.

    ``components`` lists each component's vertices in traversal order.
    ``free_loops`` counts components with no crossings at all.
    """

    components: tuple[tuple[int, ...], ...]
    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(c.sign for c in self.crossings)

    @property
    def pd(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(c.pd for c in self.crossings)

    def __len__(self):
        return len(self.crossings)

    def dump(self) -> str:
        lines = [str(c) for c in self.crossings]
        for i, comp in enumerate(self.components):
            lines.append(f"component {i + 1}: " + " ".join(map(str, comp)))
        return "\n".join(lines)


def diagram_from_sheets(n: int, sheet: dict, components) -> Diagram:
    """Diagram of ``components`` given the 0-based sheet of each interior edge.

    Only the relative order of the sheet numbers matters.
    """
    components = [tuple(c) for c in components]
    # every oriented arc, tagged with its component
    arcs = []
    for ci, verts in enumerate(components):
        for i, tail in enumerate(verts):
            arcs.append((ci, i, tail, verts[(i + 1) % len(verts)]))

    # passes[(ci, i)] -> list of (param, crossing id, is_over)
    passes = {(ci, i): [] for ci, i, _, _ in arcs}
    raw = []
    for x in range(len(arcs)):
        for y in range(x + 1, len(arcs)):
            c1, i1, t1, h1 = arcs[x]
            c2, i2, t2, h2 = arcs[y]
            e1, e2 = Edge(t1, h1), Edge(t2, h2)
            if not chords_cross(e1, e2, n):
                continue
            if e1 not in sheet or e2 not in sheet:
                raise DomainError(f"crossing chords {e1}, {e2} must both be interior")
            if sheet[e1] == sheet[e2]:
                raise DomainError(f"{e1} and {e2} cross inside sheet {sheet[e1] + 1}")
            s1, s2 = _intersection(t1, h1, t2, h2)
            first_over = sheet[e1] < sheet[e2]
            cid = len(raw)
            raw.append((arcs[x], arcs[y]) if first_over else (arcs[y], arcs[x]))
            passes[(c1, i1)].append((s1, cid, first_over))
            passes[(c2, i2)].append((s2, cid, not first_over))

    # walk each component, numbering the segments between consecutive passes
    seg_in: dict[tuple[int, bool], int] = {}
    seg_out: dict[tuple[int, bool], int] = {}
    position: dict[tuple[int, bool], int] = {}
    label = 0
    free = 0
    for ci, verts in enumerate(components):
        seq = []
        for i in range(len(verts)):
            seq.extend(sorted(passes[(ci, i)]))
        if not seq:
            free += 1
            continue
        start = label + 1
        for k, (_, cid, over) in enumerate(seq):
            seg_in[(cid, over)] = label + k if k else start + len(seq) - 1
            seg_out[(cid, over)] = start + k
            position[(cid, over)] = k
        label += len(seq)

    crossings = []
    for cid, (over_arc, under_arc) in enumerate(raw):
        oc, _, ot, oh = over_arc
        uc, _, ut, uh = under_arc
        o = _sub(vertex_point(oh), vertex_point(ot))
        u = _sub(vertex_point(uh), vertex_point(ut))
        sign = 1 if _cross(o, u) > 0 else -1
        i, k = seg_in[(cid, False)], seg_out[(cid, False)]
        o_in, o_out = seg_in[(cid, True)], seg_out[(cid, True)]
        pd = (i, o_out, k, o_in) if sign > 0 else (i, o_in, k, o_out)
        crossings.append(Crossing(
            Edge(ot, oh), Edge(ut, uh), sign, oc, uc,
            position[(cid, True)], position[(cid, False)], pd,
        ))
    order = sorted(range(len(crossings)),
                   key=lambda c: (crossings[c].under_component, crossings[c].under_position))
    return Diagram(tuple(components), tuple(crossings[c] for c in order), free)


def _check_rep(rep) -> BookRep:
    rep = as_rep(rep).normalized()
    problem = validate(rep)
    if problem is not None:
        raise DomainError(f"invalid representation: {problem}")
    return rep


def build_knot_diagram(rep, cycle) -> Diagram:
    """Diagram of ``cycle`` traversed in its canonical direction."""
    rep = _check_rep(rep)
    if not isinstance(cycle, Cycle):
        cycle = Cycle.parse(cycle) if isinstance(cycle, str) else Cycle(tuple(cycle))
    if max(cycle.vertices) > rep.n:
        raise DomainError(f"cycle {cycle} has a vertex outside 1..{rep.n}")
    return diagram_from_sheets(rep.n, rep.sheet_index, [cycle.vertices])


def build_link_diagram(rep, pair) -> Diagram:
    """Two-component diagram of a pair of disjoint triangles."""
    rep = _check_rep(rep)
    if isinstance(pair, str):
        pair = TrianglePair.parse(pair)
    elif not isinstance(pair, TrianglePair):
        pair = TrianglePair(*pair)
    return diagram_from_sheets(rep.n, rep.sheet_index, [pair.first.vertices, pair.second.vertices])


def max_crossings_bound(n: int = 6) -> int:
    """Largest crossing count of any cycle or triangle-pair diagram of K6."""
    if n != 6:
        raise DomainError("the crossing bound is only established for K6")
    return 9


# -- standard reference diagrams ---------------------------------------------


class PDCode(NamedTuple):
    pd: tuple[tuple[int, int, int, int], ...]
    free_loops: int
    writhe: int


def braid_closure_pd(word, strands: int) -> PDCode:
    """PD code of the closure of a braid.

    ``word`` lists generators as signed integers: ``i`` for sigma_i and
    ``-i`` for its inverse.  Strands run upward; sigma_i takes the strand in
    position i over the strand in position i + 1.
    """
    counter = 0
    current = []
    first = []
    for _ in range(strands):
        counter += 1
        current.append(counter)
        first.append(counter)
    touched = [False] * strands
    pd = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DomainError(f"generator {g} out of range for {strands} strands")
        left_in, right_in = current[i], current[i + 1]
        counter += 1
        left_out = counter
        counter += 1
        right_out = counter
        touched[i] = touched[i + 1] = True
        if g > 0:
            # left strand passes over to the right
            pd.append((right_in, right_out, left_out, left_in))
        else:
            # left strand passes under to the right
            pd.append((left_in, right_in, right_out, left_out))
        current[i], current[i + 1] = left_out, right_out
    # closing the braid identifies the top of each position with its bottom
    rename = dict(zip(current, first))

    def fix(x):
        return rename.get(x, x)

    pd = [tuple(fix(x) for x in X) for X in pd]
    w = sum(1 if g > 0 else -1 for g in word)
    return PDCode(tuple(pd), touched.count(False), w)
