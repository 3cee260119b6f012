"""Book representations: ordered sheets of pairwise non-crossing interior edges.

Text form: sheets top-first separated by ``|``, edges by ``,``::

    13,14,46|15,24,25|26,35,36

JSON form: ``{"n": 6, "sheets": [["13", "14", "46"], ...]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._tables import tables
from .graph import DomainError, Edge, as_edge, chords_cross, interior_edges, is_interior


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class BookRep:
    """Immutable book representation of K_n; sheet 1 (index 0) is the top.

    Exterior edges are never stored.  Empty sheets are allowed only as
    transient values while replaying move scripts; :func:`validate` rejects
    them.
    """

    n: int
    sheets: tuple[frozenset[Edge], ...]

    def __post_init__(self):
        sheets = tuple(frozenset(as_edge(e) for e in sheet) for sheet in self.sheets)
        object.__setattr__(self, "sheets", sheets)

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"BookRep({serialize(self)!r})"

    def __len__(self):
        return len(self.sheets)

    @property
    def num_sheets(self) -> int:
        return len(self.sheets)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        t = tables(self.n)
        return tuple(t.mask_of(sheet) for sheet in self.sheets)

    @cached_property
    def sheet_index(self) -> dict[Edge, int]:
        """0-based sheet index of every stored edge."""
        return {e: i for i, sheet in enumerate(self.sheets) for e in sheet}

    def sheet_of(self, e) -> int:
        """1-based sheet number holding ``e``."""
        return self.sheet_index[as_edge(e)] + 1

    @classmethod
    def from_masks(cls, n: int, masks) -> "BookRep":
        t = tables(n)
        rep = cls(n, tuple(t.edges_of(mk) for mk in masks))
        rep.__dict__["masks"] = tuple(masks)
        return rep

    def normalized(self) -> "BookRep":
        """Drop empty sheets."""
        if all(self.sheets):
            return self
        return BookRep(self.n, tuple(sh for sh in self.sheets if sh))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sheets": [[str(e) for e in sorted(sheet)] for sheet in self.sheets],
        }

    @classmethod
    def from_json(cls, obj) -> "BookRep":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), tuple(tuple(Edge.parse(e) for e in sh) for sh in obj["sheets"]))


@dataclass(frozen=True)
class SheetConfig:
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 1 for c in counts):
            raise DomainError(f"sheet counts must be positive: {counts}")
        object.__setattr__(self, "counts", counts)

    def __str__(self):
        return "(" + ",".join(map(str, self.counts)) + ")"

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class Violation:
    kind: str  # exterior-edge | duplicate-edge | missing-edge | empty-sheet | crossing-pair
    message: str
    sheet: int | None = None
    edges: tuple[Edge, ...] = ()

    def __str__(self):
        return self.message


def validate(rep: BookRep) -> Violation | None:
    """Return the first violated invariant, or ``None`` when ``rep`` is valid."""
    n = rep.n
    seen: dict[Edge, int] = {}
    for i, sheet in enumerate(rep.sheets, start=1):
        if not sheet:
            return Violation("empty-sheet", f"sheet {i} is empty", sheet=i)
        for e in sorted(sheet):
            if e.b > n:
                return Violation("exterior-edge", f"edge {e} is not an edge of K{n}", i, (e,))
            if not is_interior(e, n):
                return Violation("exterior-edge", f"exterior edge {e} stored in sheet {i}", i, (e,))
            if e in seen:
                return Violation(
                    "duplicate-edge", f"edge {e} appears in sheets {seen[e]} and {i}", i, (e,)
                )
            seen[e] = i
        ordered = sorted(sheet)
        for x in range(len(ordered)):
            for y in range(x + 1, len(ordered)):
                if chords_cross(ordered[x], ordered[y], n):
                    e, f = ordered[x], ordered[y]
                    return Violation(
                        "crossing-pair", f"crossing pair {e},{f} in sheet {i}", i, (e, f)
                    )
    for e in interior_edges(n):
        if e not in seen:
            return Violation("missing-edge", f"missing interior edge {e}", None, (e,))
    return None


def is_valid(rep: BookRep) -> bool:
    return validate(rep) is None


def parse(text: str, n: int = 6) -> BookRep:
    """Parse the sheet-string grammar.  Whitespace is ignored."""
    if n < 3:
        raise DomainError(f"need at least 3 vertices, got n={n}")
    if not text or not text.strip():
        raise ParseError("empty representation", 0)
    sheets = []
    seen = set()
    pos = 0
    for sheet_text in text.split("|"):
        sheet = []
        if sheet_text.strip():
            offset = pos
            for token in sheet_text.split(","):
                stripped = token.strip()
                where = offset + (len(token) - len(token.lstrip()))
                if not stripped:
                    raise ParseError("empty edge token", where)
                try:
                    e = Edge.parse(stripped)
                except DomainError as exc:
                    raise ParseError(f"malformed edge token {stripped!r}", where) from exc
                if e.b > n:
                    raise ParseError(f"vertex out of range 1..{n} in {stripped!r}", where)
                if e in seen:
                    raise ParseError(f"duplicate edge {e}", where)
                seen.add(e)
                sheet.append(e)
                offset += len(token) + 1
        sheets.append(frozenset(sheet))
        pos += len(sheet_text) + 1
    return BookRep(n, tuple(sheets))


def serialize(rep: BookRep) -> str:
    return "|".join(",".join(str(e) for e in sorted(sheet)) for sheet in rep.sheets)


def as_rep(obj, n: int = 6) -> BookRep:
    if isinstance(obj, BookRep):
        return obj
    if isinstance(obj, str):
        return parse(obj, n)
    if isinstance(obj, dict):
        return BookRep.from_json(obj)
    raise TypeError(f"cannot interpret {type(obj).__name__} as a book representation")


def config(rep: BookRep) -> SheetConfig:
    return SheetConfig(tuple(len(sheet) for sheet in rep.sheets))


# -- exhaustive enumeration --------------------------------------------------


def _require_k6(n: int) -> None:
    if n != 6:
        raise DomainError("exhaustive enumeration is only supported for K6")


def _ordered_partitions(t, remaining: int, memo: dict):
    """Every sequence of independent masks partitioning ``remaining``."""
    if remaining in memo:
        return memo[remaining]
    out = []
    for mask in t.independent:
        if mask & remaining == mask:
            rest = remaining ^ mask
            if rest == 0:
                out.append((mask,))
            else:
                out.extend((mask,) + tail for tail in _ordered_partitions(t, rest, memo))
    if remaining != t.full:
        memo[remaining] = out
    return out


def iter_rep_masks(n: int = 6):
    """Yield each valid representation as a tuple of sheet masks, in a fixed order."""
    _require_k6(n)
    t = tables(n)
    memo: dict = {}
    for top in t.independent:
        rest = t.full ^ top
        if rest == 0:
            yield (top,)
            continue
        for tail in _ordered_partitions(t, rest, memo):
            yield (top,) + tail


def enumerate_all_reps(n: int = 6):
    """Stream every valid book representation of K6 exactly once."""
    for masks in iter_rep_masks(n):
        yield BookRep.from_masks(n, masks)


def sheet_vectors(n: int = 6) -> np.ndarray:
    """All representations as an (N, 9) int8 array of 0-based sheet indices,
    in the same order as :func:`enumerate_all_reps`."""
    _require_k6(n)
    t = tables(n)
    memo: dict[int, np.ndarray] = {}

    def block(remaining: int) -> np.ndarray:
        # rows cover only the edges in ``remaining``; other columns are -1
        if remaining in memo:
            return memo[remaining]
        parts = []
        for mask in t.independent:
            if mask & remaining != mask:
                continue
            rest = remaining ^ mask
            if rest == 0:
                row = np.full((1, t.m), -1, dtype=np.int8)
                for i in t.bits(mask):
                    row[0, i] = 0
                parts.append(row)
                continue
            tail = block(rest).copy()
            tail[tail >= 0] += 1
            for i in t.bits(mask):
                tail[:, i] = 0
            parts.append(tail)
        out = np.concatenate(parts) if parts else np.empty((0, t.m), dtype=np.int8)
        memo[remaining] = out
        return out

    return block(t.full)
