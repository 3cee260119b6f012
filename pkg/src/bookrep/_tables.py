"""Precomputed bitmask tables for K_n.

Interior edges are numbered 0..m-1 in ascending order and a sheet is a
bitmask over those numbers.  The search code works on tuples of masks; the
public API converts to and from :class:`~bookrep.graph.Edge` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Edge, chords_cross, interior_edges, vertex_map

_TABLE_LIMIT = 14  # build 2**m lookup tables only up to this many edges


@dataclass(frozen=True)
class Symmetry:
    """A dihedral relabelling of the vertices.  Reflections also reverse the
    sheet order so that every symmetry is an isotopy (double reflection)."""

    shift: int
    reflect: bool
    vmap: tuple[int, ...]  # vmap[v] for v in 1..n, index 0 unused
    edge_perm: tuple[int, ...]
    source_of_first: int  # edge index sent to edge 0
    table: tuple[int, ...] | None


class Tables:
    def __init__(self, n: int):
        self.n = n
        self.edges = interior_edges(n)
        self.m = m = len(self.edges)
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.full = (1 << m) - 1
        self.cross = tuple(
            sum(1 << j for j, f in enumerate(self.edges) if j != i and chords_cross(e, f, n))
            for i, e in enumerate(self.edges)
        )
        self.base = max(m, 2)
        self.weight = tuple(self.base ** (m - 1 - i) for i in range(m))
        self.symmetries = tuple(self._symmetry(k, r) for r in (False, True) for k in range(n))
        self.wtable = self._weight_table() if m <= _TABLE_LIMIT else None
        self.independent = tuple(
            mask for mask in range(1, self.full + 1) if self.is_independent(mask)
        ) if m <= _TABLE_LIMIT else None

    def _symmetry(self, k: int, reflect: bool) -> Symmetry:
        f = vertex_map(self.n, k, reflect)
        vmap = (0,) + tuple(f(v) for v in range(1, self.n + 1))
        perm = tuple(self.index[Edge(vmap[e.a], vmap[e.b])] for e in self.edges)
        table = None
        if self.m <= _TABLE_LIMIT:
            table = tuple(self._apply_perm(perm, mask) for mask in range(1 << self.m))
        return Symmetry(k, reflect, vmap, perm, perm.index(0), table)

    @staticmethod
    def _apply_perm(perm, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << perm[i]
            mask >>= 1
            i += 1
        return out

    def _weight_table(self):
        w = self.weight
        out = [0] * (1 << self.m)
        for mask in range(1, 1 << self.m):
            low = mask & -mask
            out[mask] = out[mask ^ low] + w[low.bit_length() - 1]
        return tuple(out)

    def map_mask(self, sym: Symmetry, mask: int) -> int:
        if sym.table is not None:
            return sym.table[mask]
        return self._apply_perm(sym.edge_perm, mask)

    def mask_weight(self, mask: int) -> int:
        if self.wtable is not None:
            return self.wtable[mask]
        return sum(self.weight[i] for i in self.bits(mask))

    @staticmethod
    def bits(mask: int):
        i = 0
        while mask:
            if mask & 1:
                yield i
            mask >>= 1
            i += 1

    def is_independent(self, mask: int) -> bool:
        for i in self.bits(mask):
            if self.cross[i] & mask:
                return False
        return True

    def mask_of(self, edges) -> int:
        out = 0
        for e in edges:
            out |= 1 << self.index[e]
        return out

    def edges_of(self, mask: int) -> frozenset[Edge]:
        return frozenset(self.edges[i] for i in self.bits(mask))

    def incident_mask(self, v: int) -> int:
        return sum(1 << i for i, e in enumerate(self.edges) if v in e)

    # -- integer codes --------------------------------------------------

    def code(self, masks) -> int:
        """Base-``m`` integer whose digit for edge i is its sheet index."""
        return sum(i * self.mask_weight(mk) for i, mk in enumerate(masks))

    def decode(self, code: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.m):
            code, d = divmod(code, self.base)
            digits.append(d)
        digits.reverse()
        s = max(digits) + 1
        masks = [0] * s
        for i, d in enumerate(digits):
            masks[d] |= 1 << i
        return tuple(masks)

    def canonical_code(self, masks) -> int:
        """Least code over rotations, double reflections and sheet shifts."""
        s = len(masks)
        best = None
        for sym in self.symmetries:
            tab = sym.table
            mapped = [tab[mk] for mk in masks] if tab is not None else [
                self._apply_perm(sym.edge_perm, mk) for mk in masks
            ]
            top = 0
            while not mapped[top] & 1:
                top += 1
            code = 0
            if sym.reflect:
                for i, mk in enumerate(mapped):
                    code += ((top - i) % s) * self.mask_weight(mk)
            else:
                for i, mk in enumerate(mapped):
                    code += ((i - top) % s) * self.mask_weight(mk)
            if best is None or code < best:
                best = code
        return best

    def stabilizer_order(self, masks) -> int:
        """Number of (symmetry, shift) pairs fixing the representation."""
        s = len(masks)
        target = tuple(masks)
        count = 0
        for sym in self.symmetries:
            mapped = [self.map_mask(sym, mk) for mk in masks]
            if sym.reflect:
                mapped.reverse()
            for k in range(s):
                if tuple(mapped[k:] + mapped[:k]) == target:
                    count += 1
        return count


@lru_cache(maxsize=None)
def tables(n: int) -> Tables:
    return Tables(n)
