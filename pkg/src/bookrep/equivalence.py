"""Equivalence of book representations by exhaustive move closure.

Rotations, double reflections and sheet shifts form a finite group acting on
representations.  Rather than storing every representation in an orbit, the
search stores one integer *class code* per group orbit (the least code over
the group, see :meth:`bookrep._tables.Tables.canonical_code`) and closes the
set under the remaining moves: edge moves, edge moves into a freshly inserted
sheet, and vertex exchanges.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from ._tables import tables
from .graph import DomainError, Edge, as_edge, chords_cross, interior_edges
from .model import BookRep, as_rep, iter_rep_masks, sheet_vectors, validate
from .moves import neighbour_masks

log = logging.getLogger(__name__)

MAX_SHEETS_K6 = 9


def class_code(rep: BookRep) -> int:
    """Integer identifying ``rep`` up to rotation, double reflection and shift."""
    rep = rep.normalized()
    return tables(rep.n).canonical_code(rep.masks)


def class_codes(vectors: np.ndarray, n: int = 6, chunk: int = 250_000) -> np.ndarray:
    """Vectorised :func:`class_code` for an (N, m) array of 0-based sheet indices."""
    t = tables(n)
    if t.base ** t.m >= 2**62:
        raise DomainError(f"class codes for K{n} do not fit in 64 bits")
    weights = np.array(t.weight, dtype=np.int64)
    perms = [(np.argsort(sym.edge_perm), sym.reflect) for sym in t.symmetries]
    out = np.empty(len(vectors), dtype=np.int64)
    for start in range(0, len(vectors), chunk):
        block = vectors[start:start + chunk].astype(np.int64)
        s = block.max(axis=1, keepdims=True) + 1
        best = None
        for inv, reflect in perms:
            y = block[:, inv]
            top = y[:, :1]
            z = (top - y) % s if reflect else (y - top) % s
            code = z @ weights
            best = code if best is None else np.minimum(best, code)
        out[start:start + chunk] = best
    return out


def class_members(code: int, n: int = 6) -> list[BookRep]:
    """Every normal form in the symmetry class of ``code``."""
    t = tables(n)
    masks = t.decode(code)
    s = len(masks)
    seen = set()
    for sym in t.symmetries:
        mapped = [t.map_mask(sym, mk) for mk in masks]
        if sym.reflect:
            mapped.reverse()
        for k in range(s):
            seen.add(tuple(mapped[k:] + mapped[:k]))
    return [BookRep.from_masks(n, mk) for mk in sorted(seen)]


@lru_cache(maxsize=None)
def _sheet_strings(n: int) -> tuple[str, ...]:
    t = tables(n)
    return tuple(",".join(str(e) for e in sorted(t.edges_of(mk))) for mk in range(1 << t.m))


def least_string(code: int, n: int = 6) -> str:
    """Lexicographically least sheet-string in the symmetry class of ``code``."""
    t = tables(n)
    strings = _sheet_strings(n)
    masks = t.decode(code)
    s = len(masks)
    best = None
    for sym in t.symmetries:
        parts = [strings[t.map_mask(sym, mk)] for mk in masks]
        if sym.reflect:
            parts.reverse()
        for k in range(s):
            text = "|".join(parts[k:] + parts[:k])
            if best is None or text < best:
                best = text
    return best


def neighbour_codes(code: int, n: int = 6, sheet_cap: int | None = None) -> set[int]:
    t = tables(n)
    out = set()
    for masks in neighbour_masks(t, t.decode(code)):
        if sheet_cap is None or len(masks) <= sheet_cap:
            out.add(t.canonical_code(masks))
    out.discard(code)
    return out


def _neighbour_chunk(args):
    n, codes = args
    return [(c, sorted(neighbour_codes(c, n))) for c in codes]


@dataclass(frozen=True)
class Orbit:
    """An equivalence class under the moves.

    ``keys`` holds one class code per symmetry class; :meth:`members` expands
    them into every normal form.  ``size`` counts normal forms and
    ``member_count`` counts symmetry classes.
    """

    n: int
    keys: frozenset[int]
    canonical: str
    min_sheets: int
    size: int
    member_count: int

    def __contains__(self, rep) -> bool:
        rep = as_rep(rep, self.n)
        return rep.n == self.n and class_code(rep) in self.keys

    def __len__(self):
        return self.size

    def members(self):
        for code in sorted(self.keys):
            yield from class_members(code, self.n)

    @property
    def representative(self) -> BookRep:
        from .model import parse

        return parse(self.canonical, self.n)

    def to_record(self) -> dict:
        return {
            "canonical": self.canonical,
            "size": self.size,
            "min_sheets": self.min_sheets,
            "member_count": self.member_count,
            "keys": sorted(self.keys),
        }

    @classmethod
    def from_record(cls, rec: dict, n: int = 6) -> "Orbit":
        keys = frozenset(int(k) for k in rec["keys"])
        return cls(n, keys, rec["canonical"], int(rec["min_sheets"]), int(rec["size"]),
                   int(rec["member_count"]))


def _class_size(code: int, n: int) -> int:
    t = tables(n)
    masks = t.decode(code)
    return len(t.symmetries) * len(masks) // t.stabilizer_order(masks)


def _make_orbit(n: int, keys, sizes: dict[int, int] | None = None) -> Orbit:
    t = tables(n)
    keys = frozenset(keys)
    sheets = {k: len(t.decode(k)) for k in keys}
    min_sheets = min(sheets.values())
    # the class is named by its least minimal-sheet form
    canonical = min(least_string(k, n) for k in keys if sheets[k] == min_sheets)
    if sizes is None:
        size = sum(_class_size(k, n) for k in keys)
    else:
        size = sum(sizes[k] for k in keys)
    return Orbit(n, keys, canonical, min_sheets, size, len(keys))


def orbit(rep, sheet_cap: int | None = None) -> Orbit:
    """Breadth-first closure of ``rep`` under all moves.

    States with more than ``sheet_cap`` sheets are neither kept nor expanded
    (the default, the number of interior edges, never binds).
    """
    rep = as_rep(rep).normalized()
    if validate(rep) is not None:
        raise DomainError(f"invalid representation: {validate(rep)}")
    if sheet_cap is not None and sheet_cap < len(rep.sheets):
        raise DomainError(f"sheet cap {sheet_cap} below the current {len(rep.sheets)} sheets")
    start = class_code(rep)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = set()
        for code in sorted(frontier):
            for other in neighbour_codes(code, rep.n, sheet_cap):
                if other not in seen:
                    seen.add(other)
                    nxt.add(other)
        frontier = sorted(nxt)
    return _make_orbit(rep.n, seen)


def _search(start: int, n: int, goal=None, stop=None):
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for code in frontier:
            for other in sorted(neighbour_codes(code, n)):
                if other in seen:
                    continue
                if goal is not None and other == goal:
                    return True, seen
                seen.add(other)
                nxt.append(other)
        frontier = nxt
    return False, seen


def equivalent(rep_a, rep_b, classification: "Classification | None" = None) -> bool:
    a, b = as_rep(rep_a).normalized(), as_rep(rep_b).normalized()
    if a.n != b.n:
        raise DomainError(f"different vertex counts {a.n} and {b.n}")
    for r in (a, b):
        problem = validate(r)
        if problem is not None:
            raise DomainError(f"invalid representation {r}: {problem}")
    ca, cb = class_code(a), class_code(b)
    if ca == cb:
        return True
    if classification is not None:
        return classification.index_of(a) == classification.index_of(b)
    found, _ = _search(ca, a.n, goal=cb)
    return found


def min_sheet_number(rep, classification: "Classification | None" = None) -> int:
    rep = as_rep(rep)
    if classification is not None:
        return classification.orbit_of(rep).min_sheets
    return orbit(rep).min_sheets


# -- full classification ------------------------------------------------------


@dataclass
class Classification:
    """Partition of every representation of K6 into orbits."""

    n: int
    orbits: list[Orbit]
    total: int
    _index: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {k: i for i, orb in enumerate(self.orbits) for k in orb.keys}

    def __len__(self):
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def index_of(self, rep) -> int:
        return self._index[class_code(as_rep(rep, self.n))]

    def orbit_of(self, rep) -> Orbit:
        return self.orbits[self.index_of(rep)]

    def histogram(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for orb in self.orbits:
            out[orb.min_sheets] = out.get(orb.min_sheets, 0) + 1
        return dict(sorted(out.items()))

    def write(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "w") as fh:
            fh.write(json.dumps({"n": self.n, "total": self.total, "orbits": len(self.orbits)},
                                sort_keys=True) + "\n")
            for orb in self.orbits:
                fh.write(json.dumps(orb.to_record(), sort_keys=True) + "\n")
        os.replace(tmp, path)

    @classmethod
    def read(cls, path) -> "Classification":
        with open(path) as fh:
            header = json.loads(fh.readline())
            orbits = [Orbit.from_record(json.loads(line), header["n"]) for line in fh if line.strip()]
        if len(orbits) != header["orbits"]:
            raise ValueError(f"{path}: expected {header['orbits']} orbits, found {len(orbits)}")
        return cls(header["n"], orbits, header["total"])


def _union_find_orbits(codes: list[int], jobs: int, n: int) -> list[list[int]]:
    parent = {c: c for c in codes}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    if jobs > 1:
        size = max(1, len(codes) // (jobs * 8))
        chunks = [(n, codes[i:i + size]) for i in range(0, len(codes), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_neighbour_chunk, chunks)
            edges = [item for chunk in results for item in chunk]
    else:
        edges = _neighbour_chunk((n, codes))
    for code, others in edges:
        for other in others:
            if other not in parent:
                raise RuntimeError(f"move produced a representation outside the enumeration: {other}")
            a, b = find(code), find(other)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for c in codes:
        groups.setdefault(find(c), []).append(c)
    return list(groups.values())


def classify_all(n: int = 6, jobs: int = 1, cache=None) -> Classification:
    """Partition all book representations of K6 into move-equivalence classes.

    With ``cache`` set, a readable cache file is returned as-is; otherwise the
    result is computed and written there.  ``jobs`` only changes wall time.
    """
    if n != 6:
        raise DomainError("classification is only supported for K6")
    if cache is not None and Path(cache).exists():
        log.info("reading orbit cache %s", cache)
        return Classification.read(cache)
    vectors = sheet_vectors(n)
    codes = class_codes(vectors, n)
    uniq, counts = np.unique(codes, return_counts=True)
    sizes = dict(zip(uniq.tolist(), counts.tolist()))
    log.info("%d representations in %d symmetry classes", len(vectors), len(uniq))
    groups = _union_find_orbits(uniq.tolist(), jobs, n)
    orbits = [_make_orbit(n, g, sizes) for g in groups]
    orbits.sort(key=lambda o: (o.min_sheets, o.canonical))
    result = Classification(n, orbits, int(len(vectors)))
    if cache is not None:
        result.write(cache)
    return result


# -- anchor sequences ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class AnchorSequence:
    """One edge per sheet, top to bottom, each crossing the next."""

    edges: tuple[Edge, ...]
    cyclic: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(as_edge(e) for e in self.edges))

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.edges) + ")"


def _crosses(n):
    t = tables(n)
    return {e: {f for f in t.edges if chords_cross(e, f, n)} for e in t.edges}


def find_anchor_sequences(rep, cyclic: bool = False) -> list[AnchorSequence]:
    """Every choice of one edge per sheet in which consecutive edges cross.

    With ``cyclic`` the bottom edge must also cross the top edge.
    """
    rep = as_rep(rep).normalized()
    cross = _crosses(rep.n)
    sheets = [sorted(sh) for sh in rep.sheets]
    out = []

    def extend(path):
        if len(path) == len(sheets):
            if not cyclic or len(path) < 3 or path[0] in cross[path[-1]]:
                out.append(AnchorSequence(tuple(path), cyclic))
            return
        for e in sheets[len(path)]:
            if not path or e in cross[path[-1]]:
                extend(path + [e])

    extend([])
    return out


def _anchor_key(edges, n: int, cyclic: bool):
    t = tables(n)
    best = None
    for sym in t.symmetries:
        vm = sym.vmap
        # vertex reflections alone (not paired with a sheet reversal) are allowed
        # here: anchor classes are counted up to mirror image
        for flip in (False, True):
            mapped = [Edge(vm[e.a], vm[e.b]) for e in edges]
            if flip:
                mapped.reverse()
            rots = range(len(mapped)) if cyclic else (0,)
            for k in rots:
                cand = tuple(mapped[k:] + mapped[:k])
                if best is None or cand < best:
                    best = cand
    return best


def symmetry_reduce(anchors, n: int = 6) -> list[AnchorSequence]:
    """One representative per class under rotation, reflection and reversal
    (plus cyclic re-rooting for cyclic anchors)."""
    reps = {}
    for a in anchors:
        a = a if isinstance(a, AnchorSequence) else AnchorSequence(tuple(a))
        key = _anchor_key(a.edges, n, a.cyclic)
        reps.setdefault((key, a.cyclic), AnchorSequence(key, a.cyclic))
    return sorted(reps.values())


def anchor_cycles(length: int, n: int = 6) -> list[AnchorSequence]:
    """All cyclic sequences of distinct interior edges, each crossing the next."""
    cross = _crosses(n)
    edges = interior_edges(n)
    if not 3 <= length <= len(edges):
        raise DomainError(f"anchor length must be in 3..{len(edges)}")
    out = []

    def extend(path):
        if len(path) == length:
            if path[0] in cross[path[-1]]:
                out.append(AnchorSequence(tuple(path), True))
            return
        for e in edges:
            if e not in path and e in cross[path[-1]]:
                extend(path + [e])

    for e in edges:
        extend([e])
    return out


def anchor_classes(length: int, n: int = 6) -> list[AnchorSequence]:
    return symmetry_reduce(anchor_cycles(length, n), n)


def folded_nine_anchors(rep) -> list[tuple[Edge, ...]]:
    """Closed crossing sequences through all nine edges of a (2,2,2,2,1)
    representation that visit sheets in the order 1,2,3,4,1,2,3,4,5."""
    rep = as_rep(rep).normalized()
    if tuple(len(sh) for sh in rep.sheets) != (2, 2, 2, 2, 1):
        raise DomainError("needs a (2,2,2,2,1) representation")
    cross = _crosses(rep.n)
    pattern = (0, 1, 2, 3, 0, 1, 2, 3, 4)
    sheets = [sorted(sh) for sh in rep.sheets]
    out = []

    def extend(path):
        if len(path) == len(pattern):
            if path[0] in cross[path[-1]]:
                out.append(tuple(path))
            return
        for e in sheets[pattern[len(path)]]:
            if e not in path and (not path or e in cross[path[-1]]):
                extend(path + [e])

    extend([])
    return out
