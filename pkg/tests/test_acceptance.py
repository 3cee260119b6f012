"""Acceptance criteria, checked at exact tolerance.

Each test carries a ``criterion`` mark; the conftest prints one PASS/FAIL line
per criterion at the end of the run.
"""

import io
import random
import time
from importlib.resources import files
from itertools import combinations

import pytest

from bookrep._tables import tables
from bookrep.census import (
    aggregate_stats, appendix_labels, census, census_signature, load_appendix, verify_appendix,
)
from bookrep.cli import main
from bookrep.diagram import build_knot_diagram
from bookrep.equivalence import anchor_classes, folded_nine_anchors, orbit
from bookrep.graph import Cycle, TrianglePair, chords_cross, interior_edges
from bookrep.invariants import (
    KNOT_DETERMINANTS, KnotType, classify_knot, determinant, kauffman_bracket,
)
from bookrep.model import BookRep, is_valid, parse, serialize
from bookrep.moves import (
    double_reflection, mirror, neighbour_masks, parse_script, replay, rotate_vertices, shift_sheets,
)
from bookrep.moves import _edge_neighbours, _exchange_neighbours

from conftest import OPTION1, REP_4S1
from oracles import rep_diagrams, skein_bracket

OPTION2 = "13,14,46|26,35,36|15,24,25"
OPTION3 = "14,15,24|13,36,46|25,26,35"
OPTION4 = "14,15,24|25,26,35|13,36,46"


def criterion(n, title):
    return pytest.mark.criterion(n, title)


def report(n, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


# 1 ---------------------------------------------------------------------------------

@criterion(1, "59 classes with per-sheet counts 1,2,10,20,10,12,4")
def test_classification_totals(classification):
    hist = classification.histogram()
    classes = len(classification)
    expected = {3: 1, 4: 2, 5: 10, 6: 20, 7: 10, 8: 12, 9: 4}
    report(1, classes == 59 and hist == expected, f"{classes} classes, histogram {hist}")
    assert classes == 59
    assert hist == expected


# 2 ---------------------------------------------------------------------------------

@criterion(2, "unique achiral 3-sheet class with one Hopf link and no knots")
def test_three_sheet_uniqueness(classification):
    orb = orbit(OPTION1)
    for other in (OPTION2, OPTION3, OPTION4, serialize(mirror(parse(OPTION1)))):
        assert other in orb
    assert classification.histogram()[3] == 1
    c = census(OPTION1)
    assert c.hopf_pairs == {TrianglePair.parse("(135)(246)")}
    assert c.solomon_pairs == frozenset() and c.knotted == 0
    report(2, True, "Options 1-4 and the mirror share one orbit")


# 3 ---------------------------------------------------------------------------------

# states after steps 1..7 of the argument, as tabulated, then the final state
CHECKPOINTS = {
    1: "13,14,46|15,24,25|26,35,36|",
    2: "14,46|15,24,25|26|13,35,36",
    3: "14,46|13,15,35|36|24,25,26",
    4: "14,24,46|13,15,35|36|25,26",
    5: "13,35,36|14,15|24,46|25,26",
    6: "24,25,26|14,15|46|13,35,36",
    7: "|15,24,25|13,14,46|26,35,36",
    9: OPTION2,
}


@criterion(3, "nine-step script takes Option 1 to Option 2 through valid states")
def test_option_script():
    text = files("bookrep").joinpath("data", "option1_to_option2.moves").read_text()
    groups, current = [], None
    for line in text.splitlines():
        if line.startswith("## step"):
            current = []
            groups.append(current)
        elif line.strip() and not line.startswith("#"):
            current.extend(parse_script(line))
    assert len(groups) == 9
    rep = parse(OPTION1)
    for step, moves in enumerate(groups, start=1):
        for st in replay(rep, moves)[1:]:
            assert st.valid, f"step {step}: {st.move.text} gives {serialize(st.rep)}"
        rep = replay(rep, moves)[-1].rep
        if step in CHECKPOINTS:
            assert serialize(rep) == CHECKPOINTS[step]
    assert rep == parse(OPTION2)
    report(3, True, "9 steps, all intermediate states valid")


# 4 ---------------------------------------------------------------------------------

@criterion(4, "4s1 calibration: right trefoil (136425) and three Hopf pairs")
def test_calibration():
    d = build_knot_diagram(REP_4S1, "136425")
    assert classify_knot(d) is KnotType.TREFOIL_RIGHT
    c = census(REP_4S1)
    assert {str(p) for p in c.hopf_pairs} == {"(125)(346)", "(135)(246)", "(136)(245)"}
    report(4, True, "trefoil-R, hopf (125)(346) (135)(246) (136)(245)")


# 5 ---------------------------------------------------------------------------------

@criterion(5, "golden file: 30 entries verified, 59 classes covered")
def test_appendix(classification):
    start = time.perf_counter()
    rep = verify_appendix(classification=classification, entries=load_appendix())
    elapsed = time.perf_counter() - start
    bad = rep.mismatches()
    report(5, rep.ok, f"{sum(e.ok for e in rep.entries)}/30 entries, coverage "
                      f"{rep.covered}/{rep.classes}; " + "; ".join(bad))
    assert elapsed < 120
    assert all(e.ok for e in rep.entries), bad
    assert rep.coverage_ok and rep.covered == 59, bad


# 6 ---------------------------------------------------------------------------------

@criterion(6, "aggregate census extremes")
def test_aggregate(classification, class_censuses):
    stats = aggregate_stats(classification, class_censuses)
    labels = appendix_labels(classification)
    canon = {o.canonical: i for i, o in enumerate(classification.orbits)}

    def at(key):
        return {labels[canon[c]].rstrip("*") for c in stats[key]}

    assert stats["max_links"] == 7 and {"6s10", "9s2"} <= at("max_links_at")
    assert stats["min_links"] == 1
    assert stats["max_knotted"] == 9 and {"8s3", "9s2"} <= at("max_knotted_at")
    assert stats["max_figure_eights"] == 3 and at("max_figure_eights_at") == {"9s2"}
    assert stats["max_crossing_number"] <= 4
    for orb, c in zip(classification.orbits, class_censuses):
        if orb.min_sheets <= 5:
            assert not c.figure_eights and not c.solomon_pairs
    report(6, True, "links 1..7, 9 knotted, 3 figure-eights, crossing number <= 4, "
                    "no figure-eight or Solomon below 6 sheets")


# 7 ---------------------------------------------------------------------------------

@criterion(7, "anchor classes 3,3,2,4,2 and no folded 9-anchor")
def test_anchors(all_masks):
    counts = [len(anchor_classes(k)) for k in range(5, 10)]
    assert counts == [3, 3, 2, 4, 2]
    found = 0
    for masks in all_masks:
        if len(masks) == 5 and [bin(m).count("1") for m in masks] == [2, 2, 2, 2, 1]:
            assert folded_nine_anchors(BookRep.from_masks(6, masks)) == []
            found += 1
    assert found == 2880
    report(7, True, f"anchor classes {counts}; 2880 (2,2,2,2,1) reps, none anchored")


# 8 ---------------------------------------------------------------------------------

@criterion(8, "property suites on >= 1000 sampled representations")
def test_moves_preserve_validity_and_signature(sample_reps):
    assert len(sample_reps) >= 1000
    t = tables(6)
    rng = random.Random(11)
    checked = 0
    for k, rep in enumerate(sample_reps):
        sig = census_signature(census(rep))
        for nb in neighbour_masks(t, rep.masks):
            assert is_valid(BookRep.from_masks(6, nb))
        picks = []
        for source in (_edge_neighbours, _exchange_neighbours):
            options = list(source(t, rep.masks))
            if options:
                picks.append(BookRep.from_masks(6, rng.choice(options)))
        if k % 4 == 0:
            picks += [rotate_vertices(rep, rng.randrange(1, 6)), shift_sheets(rep, 1),
                      double_reflection(rep, rng.randrange(6))]
        for other in picks:
            assert is_valid(other.normalized())
            assert census_signature(census(other)) == sig
            checked += 1
    assert checked >= 1000


@criterion(8, "property suites on >= 1000 sampled representations")
def test_mirror_swaps_trefoils(sample_reps):
    for rep in sample_reps:
        a, b = census(rep), census(mirror(rep))
        assert a.trefoils_left == b.trefoils_right
        assert a.trefoils_right == b.trefoils_left
        assert a.figure_eights == b.figure_eights


@criterion(8, "property suites on >= 1000 sampled representations")
def test_bracket_matches_skein_oracle(sample_reps):
    seen = set()
    n = 0
    for rep in sample_reps:
        for d in rep_diagrams(rep, max_crossings=6, seen=seen):
            assert kauffman_bracket(d).terms == skein_bracket(d.pd, d.free_loops)
            n += 1
    assert n > 1000


@criterion(8, "property suites on >= 1000 sampled representations")
def test_determinant_agrees_with_knot_type(sample_reps):
    seen = set()
    for rep in sample_reps:
        for d in rep_diagrams(rep, seen=seen):
            if len(d.components) != 1:
                continue
            det = determinant(d)
            assert det in (1, 3, 5)
            assert det == KNOT_DETERMINANTS[classify_knot(d)]


@criterion(8, "property suites on >= 1000 sampled representations")
def test_table_of_non_crossing_sets():
    edges = interior_edges(6)
    free = [set(s) for k in (2, 3) for s in combinations(edges, k)
            if not any(chords_cross(a, b, 6) for a, b in combinations(s, 2))]
    assert sum(len(s) == 2 for s in free) == 21
    assert sum(len(s) == 3 for s in free) == 14
    sizes = [bin(m).count("1") for m in tables(6).independent]
    assert sizes.count(2) == 21 and sizes.count(3) == 14 and max(sizes) == 3
    report(8, True, "moves, mirror, skein oracle, determinant and 21/14 non-crossing sets")


# 9 ---------------------------------------------------------------------------------

@criterion(9, "classify output identical for --jobs 1 and --jobs 8")
def test_determinism(monkeypatch):
    monkeypatch.delenv("BOOKREP_CACHE", raising=False)
    outputs = []
    for jobs in ("1", "8"):
        out = io.StringIO()
        start = time.perf_counter()
        assert main(["classify", "--jobs", jobs, "--format", "json"], out=out) == 0
        assert time.perf_counter() - start < 600
        outputs.append(out.getvalue().encode())
    assert outputs[0] == outputs[1]
    report(9, True, f"{len(outputs[0])} identical bytes")
