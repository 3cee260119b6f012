import itertools

import pytest
from hypothesis import given, strategies as st

from bookrep.graph import (
    Cycle, DomainError, Edge, TrianglePair, all_edges, chords_cross, count_cycles,
    edge_length, enumerate_cycles, enumerate_triangle_pairs, exterior_edges, interior_edges,
    is_long, vertex_map,
)

vertex = st.integers(1, 6)


def test_edge_counts():
    assert len(all_edges(6)) == 15
    assert len(interior_edges(6)) == 9
    assert [str(e) for e in interior_edges(6)] == ["13", "14", "15", "24", "25", "26", "35", "36", "46"]
    assert [str(e) for e in exterior_edges(6)] == ["12", "16", "23", "34", "45", "56"]


def test_lengths():
    assert edge_length(Edge(1, 4), 6) == 3 and is_long(Edge(1, 4), 6)
    assert edge_length(Edge(1, 5), 6) == 2
    assert edge_length(Edge(1, 6), 6) == 1


def test_edge_parse_and_order():
    assert Edge.parse("31") == Edge(1, 3)
    with pytest.raises(DomainError):
        Edge(2, 2)
    with pytest.raises(DomainError):
        Edge.parse("1x")


def test_crossing_pairs_of_k6():
    # 21 non-crossing and 15 crossing pairs among the nine interior chords
    pairs = list(itertools.combinations(interior_edges(6), 2))
    crossing = [p for p in pairs if chords_cross(*p, 6)]
    assert len(pairs) - len(crossing) == 21
    assert len(crossing) == 15
    assert chords_cross(Edge(1, 4), Edge(2, 5), 6)
    assert not chords_cross(Edge(1, 3), Edge(1, 4), 6)  # shared endpoint
    assert not chords_cross(Edge(1, 3), Edge(4, 6), 6)


def test_non_crossing_triples():
    triples = [t for t in itertools.combinations(interior_edges(6), 3)
               if not any(chords_cross(a, b, 6) for a, b in itertools.combinations(t, 2))]
    assert len(triples) == 14


@given(vertex, vertex, vertex, vertex)
def test_crossing_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    e, f = Edge(min(a, b), max(a, b)), Edge(min(c, d), max(c, d))
    assert chords_cross(e, f, 6) == chords_cross(f, e, 6)
    if {a, b} & {c, d}:
        assert not chords_cross(e, f, 6)


def test_cycle_counts():
    assert [count_cycles(6, k) for k in (3, 4, 5, 6)] == [20, 45, 72, 60]
    for k in (3, 4, 5, 6):
        cycles = enumerate_cycles(6, k)
        assert len(cycles) == len(set(cycles)) == count_cycles(6, k)


def test_cycle_canonical_form():
    assert Cycle.parse("425136") == Cycle.parse("136425")
    assert Cycle.parse("524631") == Cycle.parse("136425")  # reversed
    assert str(Cycle.parse("136425")) == "(136425)"


def test_triangle_pairs():
    pairs = enumerate_triangle_pairs(6)
    assert len(pairs) == 10
    assert TrianglePair.parse("(246)(135)") == TrianglePair.parse("(135)(246)")
    with pytest.raises(DomainError):
        TrianglePair.parse("(123)(345)")


@given(st.integers(0, 5), st.booleans())
def test_vertex_map_is_bijection_preserving_adjacency(k, reflect):
    vm = vertex_map(6, k, reflect)
    assert sorted(vm(v) for v in range(1, 7)) == list(range(1, 7))
    for e in all_edges(6):
        assert edge_length(Edge(*sorted((vm(e.a), vm(e.b)))), 6) == edge_length(e, 6)
