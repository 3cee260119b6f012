"""Knot and link census of book representations of K6.

A census records which of the 10 disjoint triangle pairs are linked (Hopf or
Solomon) and which of the 132 five- and six-cycles are knotted.  Diagrams are
cached by cycle and the relative sheet order of its edges, which is all the
diagram depends on, so a census costs a few hundred dictionary lookups once
the cache is warm.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .diagram import diagram_from_sheets
from .equivalence import Classification
from .graph import Cycle, DomainError, Edge, TrianglePair, all_edges, enumerate_cycles, \
    enumerate_triangle_pairs
from .invariants import ClosedWorldViolation, KnotType, LinkType, classify_knot, classify_link, \
    linking_number
from .model import BookRep, as_rep, parse, validate
from .moves import mirror

CROSSING_NUMBER = {
    KnotType.UNKNOT: 0,
    KnotType.TREFOIL_LEFT: 3,
    KnotType.TREFOIL_RIGHT: 3,
    KnotType.FIGURE_EIGHT: 4,
    LinkType.UNLINK: 0,
    LinkType.HOPF: 2,
    LinkType.SOLOMON: 4,
}


@dataclass(frozen=True)
class Census:
    hopf_pairs: frozenset[TrianglePair] = frozenset()
    solomon_pairs: frozenset[TrianglePair] = frozenset()
    trefoils_left: frozenset[Cycle] = frozenset()
    trefoils_right: frozenset[Cycle] = frozenset()
    figure_eights: frozenset[Cycle] = frozenset()
    # signed linking numbers of the linked pairs, for reference only
    linking: tuple[tuple[TrianglePair, int], ...] = field(default=(), compare=False)

    @property
    def links(self) -> int:
        return len(self.hopf_pairs) + len(self.solomon_pairs)

    @property
    def trefoils(self) -> int:
        return len(self.trefoils_left) + len(self.trefoils_right)

    @property
    def knotted(self) -> int:
        return self.trefoils + len(self.figure_eights)

    def knot_types(self) -> dict[Cycle, KnotType]:
        out = {c: KnotType.TREFOIL_LEFT for c in self.trefoils_left}
        out.update({c: KnotType.TREFOIL_RIGHT for c in self.trefoils_right})
        out.update({c: KnotType.FIGURE_EIGHT for c in self.figure_eights})
        return out

    def link_types(self) -> dict[TrianglePair, LinkType]:
        out = {p: LinkType.HOPF for p in self.hopf_pairs}
        out.update({p: LinkType.SOLOMON for p in self.solomon_pairs})
        return out

    def types_present(self) -> set:
        return set(self.knot_types().values()) | set(self.link_types().values())

    def mirrored(self) -> "Census":
        """Census of the mirror image: handedness swaps, nothing else moves."""
        return Census(self.hopf_pairs, self.solomon_pairs, self.trefoils_right,
                      self.trefoils_left, self.figure_eights,
                      tuple((p, -lk) for p, lk in self.linking))

    def counts(self) -> dict[str, int]:
        return {
            "hopf": len(self.hopf_pairs),
            "solomon": len(self.solomon_pairs),
            "trefoil_L": len(self.trefoils_left),
            "trefoil_R": len(self.trefoils_right),
            "fig8": len(self.figure_eights),
        }

    def lines(self) -> list[str]:
        """Golden-file style lines, sorted within each kind."""
        out = [f"hopf {p}" for p in sorted(self.hopf_pairs)]
        out += [f"solomon {p}" for p in sorted(self.solomon_pairs)]
        out += [f"trefoil L {c}" for c in sorted(self.trefoils_left)]
        out += [f"trefoil R {c}" for c in sorted(self.trefoils_right)]
        out += [f"fig8 {c}" for c in sorted(self.figure_eights)]
        return out

    def to_json(self) -> dict:
        return {
            "counts": self.counts(),
            "hopf": [str(p) for p in sorted(self.hopf_pairs)],
            "solomon": [str(p) for p in sorted(self.solomon_pairs)],
            "trefoil_L": [str(c) for c in sorted(self.trefoils_left)],
            "trefoil_R": [str(c) for c in sorted(self.trefoils_right)],
            "fig8": [str(c) for c in sorted(self.figure_eights)],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Census":
        return cls(
            frozenset(TrianglePair.parse(p) for p in obj["hopf"]),
            frozenset(TrianglePair.parse(p) for p in obj["solomon"]),
            frozenset(Cycle.parse(c) for c in obj["trefoil_L"]),
            frozenset(Cycle.parse(c) for c in obj["trefoil_R"]),
            frozenset(Cycle.parse(c) for c in obj["fig8"]),
        )


def _ranks(sheet: dict, edges) -> tuple[int, ...]:
    """Dense ranks of the edges' sheets; exterior edges get -1."""
    used = sorted({sheet[e] for e in edges if e in sheet})
    pos = {s: i for i, s in enumerate(used)}
    return tuple(pos[sheet[e]] if e in sheet else -1 for e in edges)


def _rank_sheet(edges, ranks) -> dict:
    return {e: r for e, r in zip(edges, ranks) if r >= 0}


@lru_cache(maxsize=None)
def _knot_type(vertices: tuple[int, ...], ranks: tuple[int, ...]) -> KnotType:
    edges = Cycle(vertices).oriented_edges()
    d = diagram_from_sheets(6, _rank_sheet(edges, ranks), [vertices])
    return classify_knot(d)


@lru_cache(maxsize=None)
def _link_type(pair: TrianglePair, ranks: tuple[int, ...]) -> tuple[LinkType, int]:
    edges = pair.first.oriented_edges() + pair.second.oriented_edges()
    d = diagram_from_sheets(6, _rank_sheet(edges, ranks),
                            [pair.first.vertices, pair.second.vertices])
    return classify_link(d), linking_number(d)


def knot_type(rep: BookRep, cycle: Cycle) -> KnotType:
    return _knot_type(cycle.vertices, _ranks(rep.sheet_index, cycle.oriented_edges()))


def link_type(rep: BookRep, pair: TrianglePair) -> tuple[LinkType, int]:
    edges = pair.first.oriented_edges() + pair.second.oriented_edges()
    return _link_type(pair, _ranks(rep.sheet_index, edges))


def census(rep, check_short: bool = True) -> Census:
    """Classify every triangle pair and every 5- and 6-cycle of ``rep``.

    With ``check_short`` the 3- and 4-cycles are classified as well and must
    all be unknots.
    """
    rep = as_rep(rep).normalized()
    if rep.n != 6:
        raise DomainError("census is only defined for K6")
    problem = validate(rep)
    if problem is not None:
        raise DomainError(f"invalid representation: {problem}")
    hopf, solomon, linking = set(), set(), []
    for pair in enumerate_triangle_pairs(6):
        kind, lk = link_type(rep, pair)
        if kind is LinkType.HOPF:
            hopf.add(pair)
        elif kind is LinkType.SOLOMON:
            solomon.add(pair)
        if kind.linked:
            linking.append((pair, lk))
    found: dict[KnotType, set] = {k: set() for k in KnotType}
    for k in (5, 6):
        for cycle in enumerate_cycles(6, k):
            found[knot_type(rep, cycle)].add(cycle)
    if check_short:
        for k in (3, 4):
            for cycle in enumerate_cycles(6, k):
                kind = knot_type(rep, cycle)
                if kind.knotted:
                    raise ClosedWorldViolation(f"{k}-cycle {cycle} classified as {kind.value}")
    return Census(
        frozenset(hopf), frozenset(solomon),
        frozenset(found[KnotType.TREFOIL_LEFT]), frozenset(found[KnotType.TREFOIL_RIGHT]),
        frozenset(found[KnotType.FIGURE_EIGHT]), tuple(sorted(linking)),
    )


# -- signatures ----------------------------------------------------------------


EdgeIncidenceProfile = dict  # Edge -> tuple of (knot type, cycle length), sorted


def edge_incidence_profile(c: Census, n: int = 6) -> EdgeIncidenceProfile:
    """For every edge of K6, the knotted cycles through it as (type, length) pairs.

    All 15 edges are included: a vertex exchange relabels the graph, so an
    edge that is interior in one representation can be exterior in another.
    """
    profile = {e: [] for e in all_edges(n)}
    for cycle, kind in c.knot_types().items():
        for e in cycle.edges:
            profile[e].append((kind.value, len(cycle)))
    return {e: tuple(sorted(v)) for e, v in profile.items()}


def census_signature(c: Census) -> tuple:
    """Relabelling-invariant fingerprint of a census."""
    profile = edge_incidence_profile(c)
    return (
        len(c.hopf_pairs),
        len(c.solomon_pairs),
        len(c.trefoils_left),
        len(c.trefoils_right),
        len(c.figure_eights),
        tuple(sorted(profile.values())),
    )


# -- chirality -----------------------------------------------------------------


@dataclass(frozen=True)
class Chirality:
    achiral: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]

    def partner(self, index: int) -> int:
        if index in self.achiral:
            return index
        for a, b in self.pairs:
            if index == a:
                return b
            if index == b:
                return a
        raise KeyError(index)


def chirality(classification: Classification) -> Chirality:
    """Match every class with the class of its mirror image."""
    achiral, pairs = [], []
    for i, orb in enumerate(classification.orbits):
        j = classification.index_of(mirror(orb.representative))
        if j == i:
            achiral.append(i)
        elif i < j:
            pairs.append((i, j))
    return Chirality(tuple(achiral), tuple(pairs))


# -- the appendix golden file ----------------------------------------------------


@dataclass(frozen=True)
class AppendixEntry:
    id: str
    rep: BookRep
    census: Census

    @property
    def sheets(self) -> int:
        return int(self.id.split("s")[0])


def default_appendix_path() -> Path:
    return Path(str(resources.files("bookrep") / "data" / "appendix.txt"))


_ID = re.compile(r"\d+s\d+")


def load_appendix(path=None) -> list[AppendixEntry]:
    path = default_appendix_path() if path is None else Path(path)
    entries = []
    current = None

    def flush():
        if current is None:
            return
        if current["rep"] is None:
            raise ValueError(f"{path}: entry {current['id']} has no sheets line")
        c = Census(
            frozenset(current["hopf"]), frozenset(current["solomon"]),
            frozenset(current["L"]), frozenset(current["R"]), frozenset(current["fig8"]),
        )
        entries.append(AppendixEntry(current["id"], current["rep"], c))

    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "id":
                flush()
                if not _ID.fullmatch(rest):
                    raise ValueError(rest)
                current = {"id": rest, "rep": None, "hopf": set(), "solomon": set(),
                           "L": set(), "R": set(), "fig8": set()}
            elif current is None:
                raise ValueError("record does not start with an id line")
            elif key == "sheets":
                current["rep"] = parse(rest)
            elif key in ("hopf", "solomon"):
                current[key].add(TrianglePair.parse(rest))
            elif key == "trefoil":
                hand, _, cyc = rest.partition(" ")
                if hand not in ("L", "R"):
                    raise ValueError(hand)
                current[hand].add(Cycle.parse(cyc))
            elif key == "fig8":
                current["fig8"].add(Cycle.parse(rest))
            else:
                raise ValueError(key)
        except (ValueError, DomainError) as exc:
            raise ValueError(f"{path}:{lineno}: cannot read {raw.strip()!r}") from exc
    flush()
    return entries


@dataclass
class EntryCheck:
    id: str
    valid: bool
    census_ok: bool
    min_sheets: int | None
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)

    @property
    def sheets_ok(self) -> bool:
        return self.min_sheets == int(self.id.split("s")[0])

    @property
    def ok(self) -> bool:
        return self.valid and self.census_ok and self.sheets_ok


@dataclass
class AppendixReport:
    entries: list[EntryCheck]
    classes: int
    covered: int
    overlaps: list[tuple[str, str]]
    labels: dict[int, str]

    @property
    def coverage_ok(self) -> bool:
        # every class is hit, and the only coincidence is an achiral entry with its mirror
        expected = 2 * len(self.entries) - 1
        return (self.covered == self.classes == expected and len(self.overlaps) == 1
                and self.overlaps[0][1] == self.overlaps[0][0] + "*")

    @property
    def ok(self) -> bool:
        return self.coverage_ok and all(e.ok for e in self.entries)

    def mismatches(self) -> list[str]:
        out = []
        for e in self.entries:
            if not e.valid:
                out.append(f"{e.id}: representation is invalid")
                continue
            for item in e.missing:
                out.append(f"{e.id}: listed but not found: {item}")
            for item in e.extra:
                out.append(f"{e.id}: found but not listed: {item}")
            if not e.sheets_ok:
                out.append(f"{e.id}: minimal sheet number is {e.min_sheets}")
        for a, b in self.overlaps:
            if b != a + "*":
                out.append(f"{a} and {b} lie in the same class")
        expected = 2 * len(self.entries) - 1
        if self.covered != self.classes or self.covered != expected:
            out.append(f"coverage {self.covered}/{self.classes} classes, "
                       f"{expected} expected from {len(self.entries)} entries")
        return out


def verify_appendix(path=None, classification: Classification | None = None,
                    entries: list[AppendixEntry] | None = None) -> AppendixReport:
    """Check every golden entry's validity, census and minimal sheet number,
    and that the entries with their mirrors cover every class once."""
    if entries is None:
        entries = load_appendix(path)
    if classification is None:
        from .equivalence import classify_all

        classification = classify_all()
    checks = []
    labels: dict[int, str] = {}
    overlaps = []
    for entry in entries:
        valid = validate(entry.rep) is None
        if not valid:
            checks.append(EntryCheck(entry.id, False, False, None))
            continue
        got = census(entry.rep)
        want = set(entry.census.lines())
        have = set(got.lines())
        idx = classification.index_of(entry.rep)
        checks.append(EntryCheck(
            entry.id, True, want == have, classification.orbits[idx].min_sheets,
            sorted(want - have), sorted(have - want),
        ))
        for label, rep in ((entry.id, entry.rep), (entry.id + "*", mirror(entry.rep))):
            k = classification.index_of(rep)
            if k in labels:
                overlaps.append((labels[k], label))
            else:
                labels[k] = label
    return AppendixReport(checks, len(classification), len(labels), overlaps, labels)


def appendix_labels(classification: Classification, entries=None) -> dict[int, str]:
    """Class index -> appendix id (``"6s2"``, or ``"6s2*"`` for a mirror)."""
    if entries is None:
        entries = load_appendix()
    labels: dict[int, str] = {}
    for entry in entries:
        for label, rep in ((entry.id, entry.rep), (entry.id + "*", mirror(entry.rep))):
            labels.setdefault(classification.index_of(rep), label)
    return labels


# -- aggregate claims ------------------------------------------------------------


def aggregate_stats(classification: Classification, censuses: list[Census] | None = None) -> dict:
    """Extremes of the census over all classes."""
    if censuses is None:
        censuses = [census(orb.representative) for orb in classification.orbits]
    links = [c.links for c in censuses]
    knotted = [c.knotted for c in censuses]
    figs = [len(c.figure_eights) for c in censuses]

    def where(values, target):
        return [classification.orbits[i].canonical for i, v in enumerate(values) if v == target]

    four = [classification.orbits[i].min_sheets for i, c in enumerate(censuses)
            if c.figure_eights or c.solomon_pairs]
    types = set().union(*(c.types_present() for c in censuses)) if censuses else set()
    return {
        "classes": len(classification),
        "min_links": min(links),
        "max_links": max(links),
        "max_links_at": where(links, max(links)),
        "max_knotted": max(knotted),
        "max_knotted_at": where(knotted, max(knotted)),
        "max_figure_eights": max(figs),
        "max_figure_eights_at": where(figs, max(figs)),
        "max_crossing_number": max((CROSSING_NUMBER[t] for t in types), default=0),
        "min_sheets_four_crossing": min(four) if four else None,
        "histogram": classification.histogram(),
    }


def signature_counter(censuses) -> Counter:
    return Counter(census_signature(c) for c in censuses)
