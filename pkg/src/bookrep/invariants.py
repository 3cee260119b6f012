"""Exact knot and link invariants of small diagrams.

Everything is integer arithmetic.  The Kauffman bracket is a plain state sum
(diagrams here have at most nine crossings), the Jones polynomial is the
writhe-normalised bracket with ``t = A^-4``, and the determinant comes from
the Fox colouring matrix.  Cycles and triangle pairs of K6 can only be
unknots, trefoils, figure-eights, unlinks, Hopf links or Solomon links, so
classification is a lookup against reference diagrams built from braids.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

from .diagram import Diagram, PDCode, braid_closure_pd
from .graph import DomainError


class ClosedWorldViolation(RuntimeError):
    """An invariant matched none of the knot or link types possible in K6."""


class LaurentPoly:
    """Laurent polynomial with integer coefficients.

    Exponents are integers, or fractions for Jones polynomials of links.
    """

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "A"):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                e = Fraction(e)
                e = int(e) if e.denominator == 1 else e
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exp=0, coef: int = 1, var: str = "A") -> "LaurentPoly":
        return cls({exp: coef}, var)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have inverses")
            return LaurentPoly({-e * -k: c ** -k}, self.var)
        out = LaurentPoly({0: 1}, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def substitute(self, scale) -> "LaurentPoly":
        """Replace the variable ``x`` by ``x^scale`` (``scale=-1`` mirrors)."""
        return LaurentPoly({e * scale: c for e, c in self.terms.items()}, self.var)

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self.terms, var)

    def evaluate(self, x: int) -> Fraction:
        """Value at a non-zero integer, exact (integer exponents only)."""
        return sum((Fraction(x) ** e * c for e, c in self.terms.items()), Fraction(0))

    @property
    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def unit_normal(self) -> "LaurentPoly":
        """Representative of ``self`` up to multiplication by ``±x^k``."""
        if not self.terms:
            return self
        low = self.min_exp
        sign = 1 if self.terms[low] > 0 else -1
        return LaurentPoly({e - low: sign * c for e, c in self.terms.items()}, self.var)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else f"{self.var}^{e}" if isinstance(e, int) \
                    else f"{self.var}^({e})"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


A = LaurentPoly.monomial(1)
DELTA = -(A ** 2) - A ** -2


class KnotType(enum.Enum):
    UNKNOT = "unknot"
    TREFOIL_LEFT = "trefoil-L"
    TREFOIL_RIGHT = "trefoil-R"
    FIGURE_EIGHT = "figure-eight"

    @property
    def knotted(self) -> bool:
        return self is not KnotType.UNKNOT

    def mirror(self) -> "KnotType":
        swap = {KnotType.TREFOIL_LEFT: KnotType.TREFOIL_RIGHT,
                KnotType.TREFOIL_RIGHT: KnotType.TREFOIL_LEFT}
        return swap.get(self, self)


class LinkType(enum.Enum):
    UNLINK = "unlink"
    HOPF = "hopf"
    SOLOMON = "solomon"

    @property
    def linked(self) -> bool:
        return self is not LinkType.UNLINK


# -- bracket -----------------------------------------------------------------


def _pd_of(d) -> PDCode:
    if isinstance(d, Diagram):
        return PDCode(d.pd, d.free_loops, d.writhe)
    if isinstance(d, PDCode):
        return d
    raise TypeError(f"expected a Diagram or PDCode, got {type(d).__name__}")


def _count_loops(pairs, labels) -> int:
    parent = {x: x for x in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    loops = len(parent)
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            loops -= 1
    return loops


def bracket_from_pd(pd, free_loops: int = 0) -> LaurentPoly:
    """State sum of ``<D>`` normalised so that one round loop is 1."""
    pd = tuple(tuple(x) for x in pd)
    labels = {x for X in pd for x in X}
    c = len(pd)
    if c == 0:
        return DELTA ** (free_loops - 1) if free_loops else LaurentPoly({0: 1})
    # loop count per state, grouped as {(a - b, loops): multiplicity}
    tally: dict[tuple[int, int], int] = {}
    for state in range(1 << c):
        pairs = []
        a_count = 0
        for k, (i, j, m, l) in enumerate(pd):
            if state >> k & 1:
                pairs.append((i, l))
                pairs.append((j, m))
            else:
                a_count += 1
                pairs.append((i, j))
                pairs.append((m, l))
        loops = _count_loops(pairs, labels) + free_loops
        key = (2 * a_count - c, loops)
        tally[key] = tally.get(key, 0) + 1
    total = LaurentPoly()
    for (exp, loops), mult in sorted(tally.items()):
        total = total + LaurentPoly.monomial(exp, mult) * _delta_power(loops - 1)
    return total


@lru_cache(maxsize=None)
def _delta_power(k: int) -> LaurentPoly:
    return DELTA ** k


def kauffman_bracket(d) -> LaurentPoly:
    code = _pd_of(d)
    return bracket_from_pd(code.pd, code.free_loops)


def writhe(d) -> int:
    return _pd_of(d).writhe


def normalized_bracket(d) -> LaurentPoly:
    """``f(D) = (-A^3)^(-w) <D>``, an isotopy invariant in the variable A."""
    return (-(A ** 3)) ** (-writhe(d)) * kauffman_bracket(d)


def jones(d) -> LaurentPoly:
    """Jones polynomial in t; exponents are half-integers for two components."""
    f = normalized_bracket(d)
    return LaurentPoly({Fraction(e, -4): c for e, c in f.terms.items()}, "t")


# -- linking number and determinant ---------------------------------------------


def linking_number(d: Diagram) -> int:
    if len(d.components) != 2:
        raise DomainError(f"linking number needs two components, got {len(d.components)}")
    total = sum(c.sign for c in d.crossings if c.mixed)
    if total % 2:
        raise ClosedWorldViolation(f"odd inter-component sign sum {total}")
    return total // 2


def _bareiss_det(m: list[list[int]]) -> int:
    m = [row[:] for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def determinant(d) -> int:
    """Knot determinant from the colouring matrix of a one-component diagram."""
    if isinstance(d, Diagram) and len(d.components) != 1:
        raise DomainError("determinant is implemented for knots only")
    pd = _pd_of(d).pd
    if not pd:
        return 1
    # over-strand labels j and l belong to the same arc
    parent = {x: x for X in pd for x in X}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, j, _, l in pd:
        parent[find(j)] = find(l)
    arcs = sorted({find(x) for x in parent})
    col = {a: i for i, a in enumerate(arcs)}
    rows = []
    for i, j, k, _ in pd:
        row = [0] * len(arcs)
        row[col[find(j)]] += 2
        row[col[find(i)]] -= 1
        row[col[find(k)]] -= 1
        rows.append(row)
    minor = [r[1:] for r in rows[1:]]
    return abs(_bareiss_det(minor))


# -- classification ----------------------------------------------------------


_KNOT_BRAIDS = {
    KnotType.UNKNOT: ((), 1),
    KnotType.TREFOIL_RIGHT: ((1, 1, 1), 2),
    KnotType.TREFOIL_LEFT: ((-1, -1, -1), 2),
    KnotType.FIGURE_EIGHT: ((1, -2, 1, -2), 3),
}

_LINK_BRAIDS = {
    LinkType.UNLINK: (((), 2),),
    LinkType.HOPF: (((1, 1), 2), ((-1, -1), 2)),
    LinkType.SOLOMON: (((1, 1, 1, 1), 2), ((-1, -1, -1, -1), 2)),
}

KNOT_DETERMINANTS = {
    KnotType.UNKNOT: 1,
    KnotType.TREFOIL_LEFT: 3,
    KnotType.TREFOIL_RIGHT: 3,
    KnotType.FIGURE_EIGHT: 5,
}


@lru_cache(maxsize=None)
def reference_knot_values() -> dict[KnotType, LaurentPoly]:
    """Normalised brackets of the standard knot diagrams."""
    out = {}
    for kind, (word, strands) in _KNOT_BRAIDS.items():
        out[kind] = normalized_bracket(braid_closure_pd(word, strands))
    return out


@lru_cache(maxsize=None)
def reference_link_brackets() -> dict[LinkType, frozenset]:
    """Brackets (up to units) of the standard two-component diagrams."""
    out = {}
    for kind, braids in _LINK_BRAIDS.items():
        out[kind] = frozenset(
            kauffman_bracket(braid_closure_pd(word, strands)).unit_normal()
            for word, strands in braids
        )
    return out


def classify_knot(d) -> KnotType:
    if isinstance(d, Diagram) and len(d.components) != 1:
        raise DomainError("classify_knot needs a one-component diagram")
    f = normalized_bracket(d)
    matches = [kind for kind, ref in reference_knot_values().items() if ref == f]
    if len(matches) != 1:
        raise ClosedWorldViolation(f"normalised bracket {f} matches {len(matches)} knot types")
    return matches[0]


def classify_link(d: Diagram) -> LinkType:
    lk = abs(linking_number(d))
    try:
        kind = (LinkType.UNLINK, LinkType.HOPF, LinkType.SOLOMON)[lk]
    except IndexError:
        raise ClosedWorldViolation(f"linking number {lk} outside the K6 link types") from None
    bracket = kauffman_bracket(d).unit_normal()
    if bracket not in reference_link_brackets()[kind]:
        raise ClosedWorldViolation(f"bracket {bracket} disagrees with |lk| = {lk}")
    return kind
