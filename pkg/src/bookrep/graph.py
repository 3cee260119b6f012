"""Complete graphs with vertices placed on a circle.

Vertices are labelled 1..n clockwise around the boundary circle and every
edge is drawn as a straight chord.  Only the cyclic order of the endpoints
matters for crossings, so everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb


class DomainError(ValueError):
    """A vertex, edge or size argument outside the supported range."""


@dataclass(frozen=True, order=True)
class Edge:
    """Unordered vertex pair; ``Edge(4, 1) == Edge(1, 4)``."""

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if not (isinstance(a, int) and isinstance(b, int)):
            raise DomainError(f"edge endpoints must be integers, got {a!r}, {b!r}")
        if a == b:
            raise DomainError(f"loop edge {a}{b}")
        if a > b:
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)
        if self.a < 1:
            raise DomainError(f"vertex labels start at 1, got {self.a}")

    @classmethod
    def parse(cls, text: str) -> "Edge":
        """Parse ``"13"`` (or ``"3-11"`` when a label has two digits)."""
        text = text.strip()
        if "-" in text:
            left, _, right = text.partition("-")
        elif len(text) == 2:
            left, right = text[0], text[1]
        else:
            raise DomainError(f"malformed edge {text!r}")
        if not (left.isdigit() and right.isdigit()):
            raise DomainError(f"malformed edge {text!r}")
        return cls(int(left), int(right))

    def __str__(self):
        if self.b < 10:
            return f"{self.a}{self.b}"
        return f"{self.a}-{self.b}"

    def __contains__(self, v):
        return v == self.a or v == self.b

    def other(self, v: int) -> int:
        if v == self.a:
            return self.b
        if v == self.b:
            return self.a
        raise DomainError(f"vertex {v} is not an endpoint of {self}")


def as_edge(e) -> Edge:
    if isinstance(e, Edge):
        return e
    if isinstance(e, str):
        return Edge.parse(e)
    a, b = e
    return Edge(int(a), int(b))


def _check_edge(e: Edge, n: int) -> None:
    if n < 3:
        raise DomainError(f"need at least 3 vertices, got n={n}")
    if e.b > n:
        raise DomainError(f"edge {e} has a vertex outside 1..{n}")


def edge_length(e, n: int) -> int:
    """Distance between the endpoints along the boundary circle."""
    e = as_edge(e)
    _check_edge(e, n)
    return min(e.b - e.a, (e.a - e.b) % n)


def is_interior(e, n: int) -> bool:
    return edge_length(e, n) >= 2


def is_long(e, n: int) -> bool:
    return n % 2 == 0 and edge_length(e, n) == n // 2


def chords_cross(e1, e2, n: int) -> bool:
    """True iff the two chords meet at an interior point of the disk."""
    e1, e2 = as_edge(e1), as_edge(e2)
    _check_edge(e1, n)
    _check_edge(e2, n)
    a, b = e1.a, e1.b
    c, d = e2.a, e2.b
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


@lru_cache(maxsize=None)
def all_edges(n: int) -> tuple[Edge, ...]:
    if n < 3:
        raise DomainError(f"need at least 3 vertices, got n={n}")
    return tuple(Edge(a, b) for a, b in combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def interior_edges(n: int) -> tuple[Edge, ...]:
    """Interior edges of K_n in ascending order; there are n(n-3)/2 of them."""
    return tuple(e for e in all_edges(n) if is_interior(e, n))


@lru_cache(maxsize=None)
def exterior_edges(n: int) -> tuple[Edge, ...]:
    return tuple(e for e in all_edges(n) if not is_interior(e, n))


def _canonical_cycle(vertices) -> tuple[int, ...]:
    vs = tuple(vertices)
    k = len(vs)
    i = vs.index(min(vs))
    fwd = vs[i:] + vs[:i]
    back = (fwd[0],) + tuple(reversed(fwd[1:]))
    return fwd if fwd[1] < fwd[-1] else back


@dataclass(frozen=True, order=True)
class Cycle:
    """Unoriented cycle.  Stored starting at the smallest vertex and heading
    toward the smaller of its two neighbours, so rotations and reversals of
    the same vertex sequence compare equal."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) < 3:
            raise DomainError(f"a cycle needs at least 3 vertices, got {vs}")
        if len(set(vs)) != len(vs):
            raise DomainError(f"repeated vertex in cycle {vs}")
        if min(vs) < 1:
            raise DomainError(f"vertex labels start at 1, got {vs}")
        object.__setattr__(self, "vertices", _canonical_cycle(vs))

    @classmethod
    def parse(cls, text: str) -> "Cycle":
        """Parse ``"136425"`` or ``"(136425)"``; single-digit labels only."""
        body = text.strip().strip("()")
        if not body.isdigit():
            raise DomainError(f"malformed cycle {text!r}")
        return cls(tuple(int(ch) for ch in body))

    def __len__(self):
        return len(self.vertices)

    def __str__(self):
        return "(" + "".join(str(v) for v in self.vertices) + ")"

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self.oriented_edges())

    def oriented_edges(self) -> list[Edge]:
        """Edges in traversal order of the canonical direction."""
        vs = self.vertices
        return [Edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def arcs(self) -> list[tuple[int, int]]:
        """Directed (tail, head) pairs in the canonical direction."""
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def relabel(self, vmap) -> "Cycle":
        return Cycle(tuple(vmap(v) for v in self.vertices))


@dataclass(frozen=True, order=True)
class TrianglePair:
    """Two vertex-disjoint 3-cycles; the one holding the smallest vertex first."""

    first: Cycle
    second: Cycle

    def __post_init__(self):
        first, second = self.first, self.second
        if not isinstance(first, Cycle):
            first = Cycle(first)
        if not isinstance(second, Cycle):
            second = Cycle(second)
        if len(first) != 3 or len(second) != 3:
            raise DomainError("a triangle pair needs two 3-cycles")
        if set(first.vertices) & set(second.vertices):
            raise DomainError(f"triangles {first} and {second} share a vertex")
        if second.vertices[0] < first.vertices[0]:
            first, second = second, first
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)

    @classmethod
    def parse(cls, text: str) -> "TrianglePair":
        """Parse ``"(135)(246)"``."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")") and ")(" in body):
            raise DomainError(f"malformed triangle pair {text!r}")
        left, right = body[1:-1].split(")(")
        return cls(Cycle.parse(left), Cycle.parse(right))

    def __str__(self):
        return f"{self.first}{self.second}"

    def relabel(self, vmap) -> "TrianglePair":
        return TrianglePair(self.first.relabel(vmap), self.second.relabel(vmap))


def count_cycles(n: int, k: int) -> int:
    return comb(n, k) * _factorial(k - 1) // 2


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


@lru_cache(maxsize=None)
def enumerate_cycles(n: int, k: int) -> tuple[Cycle, ...]:
    """All k-cycles of K_n, each once, sorted."""
    if not 3 <= k <= n:
        raise DomainError(f"cycle length must be in 3..{n}, got {k}")
    found = set()
    for subset in combinations(range(1, n + 1), k):
        head, rest = subset[0], subset[1:]
        for perm in permutations(rest):
            if perm[0] < perm[-1]:
                found.add(Cycle((head,) + perm))
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def enumerate_triangle_pairs(n: int = 6) -> tuple[TrianglePair, ...]:
    if n != 6:
        raise DomainError("triangle pairs are only supported for K6")
    pairs = set()
    for tri in combinations(range(2, 7), 2):
        first = (1,) + tri
        second = tuple(v for v in range(1, 7) if v not in first)
        pairs.add(TrianglePair(Cycle(first), Cycle(second)))
    return tuple(sorted(pairs))


def vertex_map(n: int, k: int, reflect: bool):
    """Rotation ``v -> v + k`` or reflection ``v -> k - v`` (mod n, labels 1..n)."""
    if reflect:
        return lambda v: (k - v) % n or n
    return lambda v: (v - 1 + k) % n + 1
