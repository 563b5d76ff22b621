from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import F, single, triangle
from hypermatch.errors import DuplicateEdge, EmptyEdge, IndexOutOfRange, VertexOutOfRange
from hypermatch.generators import fano
from hypermatch.hypergraph import Hypergraph, WeightedInstance, build_hypergraph


def test_triangle_construction():
    h = triangle()
    assert h.rank == 2 and h.edge_count == 3


def test_fano_lines_meet_once():
    h = build_hypergraph(7, fano().edges)
    assert h.edge_count == 7 and h.rank == 3
    for a, b in combinations(h.edges, 2):
        assert len(set(a) & set(b)) == 1


def test_validation_errors():
    with pytest.raises(EmptyEdge):
        build_hypergraph(2, [[0], [0, 1], []])
    with pytest.raises(DuplicateEdge):
        build_hypergraph(3, [[0, 1], [1, 0]])
    with pytest.raises(VertexOutOfRange):
        build_hypergraph(2, [[0, 2]])
    with pytest.raises(VertexOutOfRange):
        build_hypergraph(2, [[-1, 0]])


def test_canonical_edges_keep_order():
    h = build_hypergraph(4, [[3, 1, 1], [0, 2]])
    assert h.edges == ((1, 3), (0, 2))


def test_edgeless_rank_zero():
    assert build_hypergraph(3, []).rank == 0


def test_neighborhoods():
    assert triangle().neighborhood(0) == {1, 2}
    h = fano()
    for e in range(7):
        assert h.neighborhood(e) == set(range(7)) - {e}
        assert h.neighborhood_k(e, 3) == set(range(7)) - {e}
    assert build_hypergraph(4, [[0, 1], [2, 3]]).neighborhood(0) == set()
    assert triangle().neighborhood_k(0, 3) == set()
    mixed = build_hypergraph(5, [[0, 1], [1, 2, 3], [3, 4]])
    assert mixed.neighborhood_k(0, 3) == {1}
    with pytest.raises(IndexOutOfRange):
        triangle().neighborhood(3)


def test_matching_predicates():
    t = triangle()
    assert t.is_fractional_matching([F(1, 2)] * 3)
    assert not t.is_fractional_matching([F(1, 2), F(1, 2), F(3, 5)])
    assert not t.is_fractional_matching([F(-1, 2), 0, 0])
    h = fano()
    for a, b in combinations(range(7), 2):
        assert not h.is_matching({a, b})
    assert h.is_matching({3})
    with pytest.raises(IndexOutOfRange):
        h.is_matching({7})


def test_tight_and_reduced():
    t = triangle()
    assert t.tight_vertices([F(1, 2)] * 3) == {0, 1, 2}
    assert t.is_reduced([F(1, 2)] * 3)
    s = single()
    assert s.tight_vertices([F(1)]) == {0, 1}
    assert not s.is_reduced([F(1)])
    assert fano().tight_vertices([F(1, 3)] * 7) == set(range(7))
    assert fano().is_reduced([F(1, 3)] * 7)


def test_weighted_instance_length_check():
    with pytest.raises(ValueError):
        WeightedInstance(triangle(), (F(1),))


# --- properties ---------------------------------------------------------------


@st.composite
def hypergraphs(draw, max_n=8, max_m=10):
    n = draw(st.integers(1, max_n))
    edge = st.frozensets(st.integers(0, n - 1), min_size=1, max_size=min(n, 5))
    edges = draw(st.lists(edge, max_size=max_m, unique=True))
    return build_hypergraph(n, [sorted(e) for e in edges])


@st.composite
def with_fractional_matching(draw):
    h = draw(hypergraphs())
    raw = [Fraction(draw(st.integers(0, 12)), draw(st.integers(1, 12))) for _ in h.edges]
    raw = [min(r, Fraction(1)) for r in raw]
    loads = h.vertex_loads(raw) if h.edges else [Fraction(0)]
    top = max(loads, default=Fraction(0))
    x = [r / top for r in raw] if top > 1 else raw
    return h, x


@settings(max_examples=150, deadline=None)
@given(hypergraphs())
def test_neighborhood_symmetry_and_partition(h: Hypergraph):
    for e in range(h.edge_count):
        nb = h.neighborhood(e)
        assert e not in nb
        for f in nb:
            assert e in h.neighborhood(f)
        parts = [h.neighborhood_k(e, k) for k in range(1, h.rank + 1)]
        assert sum(len(p) for p in parts) == len(nb)
        assert frozenset().union(*parts) == nb


@settings(max_examples=150, deadline=None)
@given(hypergraphs(), st.data())
def test_matching_indicator_is_fractional(h: Hypergraph, data):
    s = data.draw(st.sets(st.integers(0, max(h.edge_count - 1, 0)))) if h.edges else set()
    if h.is_matching(s):
        x = [Fraction(int(i in s)) for i in range(h.edge_count)]
        assert h.is_fractional_matching(x)


@settings(max_examples=200, deadline=None)
@given(with_fractional_matching())
def test_neighbour_load_bound(pair):
    h, x = pair
    assert h.is_fractional_matching(x)
    for e, verts in enumerate(h.edges):
        assert sum((x[f] for f in h.neighborhood(e)), Fraction(0)) <= len(verts) * (1 - x[e])
