import pytest
from hypothesis import given, strategies as st

from conftalk import (
    ConferenceStructure,
    DeltaPoly,
    build_graph,
    conference_components,
    distance_worth,
    dyadic_conferences,
    restrict_conferences,
    restricted_worth,
)
from conftalk.conference import WorthTable

from oracles import restricted_coeffs, union_find_blocks
from strategies import conference_lists, graphs

S, R, W = 0, 1, 2


@pytest.fixture
def h3(star3):
    return dyadic_conferences(star3)


def test_structure_validation():
    with pytest.raises(ValueError):
        ConferenceStructure([[1]])
    h = ConferenceStructure([[0, 1], [1, 0]])
    assert len(h) == 1
    assert ConferenceStructure.from_json(h.to_json()) == h
    with pytest.raises(ValueError):
        h.validate_for(build_graph(1, []))


def test_dyadic(star3, h3):
    assert set(h3) == {frozenset({S, R}), frozenset({R, W})}
    assert len(dyadic_conferences(build_graph(3, []))) == 0


def test_restrict(h3):
    assert len(restrict_conferences(h3, {S, W})) == 0
    assert set(restrict_conferences(h3, {S, R})) == {frozenset({S, R})}
    assert restrict_conferences(h3, {S, R, W}) == h3


def test_components(h3):
    assert conference_components({S, R, W}, h3) == [frozenset({S, R, W})]
    assert conference_components({S, W}, h3) == [frozenset({S}), frozenset({W})]
    assert conference_components({S, W}, h3 | [{S, W}]) == [frozenset({S, W})]


def test_restricted_worth_examples(star3, h3):
    assert restricted_worth(star3, h3, {S, R, W}) == DeltaPoly({1: 4, 2: 2})
    assert restricted_worth(star3, h3, {S, R}) == DeltaPoly({1: 2})
    assert restricted_worth(star3, h3, {R, W}) == DeltaPoly({1: 2})
    # connected by conference but not by an edge
    assert restricted_worth(star3, h3 | [{S, W}], {S, W}).is_zero()


def test_worth_uses_base_graph_distances():
    # one conference spanning a path: the pair (0, 2) still sits at distance two
    g = build_graph(3, [(0, 1), (1, 2)])
    assert restricted_worth(g, ConferenceStructure([[0, 1, 2]]), {0, 1, 2}) == DeltaPoly({1: 4, 2: 2})


@st.composite
def instances(draw):
    n, edges = draw(graphs(min_nodes=2, max_nodes=6))
    hs = draw(conference_lists(n))
    s = draw(st.sets(st.integers(0, n - 1)))
    return n, edges, hs, s


@given(instances())
def test_components_partition_matches_union_find(case):
    n, edges, hs, s = case
    blocks = conference_components(s, ConferenceStructure(hs))
    assert sum(len(b) for b in blocks) == len(s)
    assert set().union(*blocks) == set(s) if blocks else not s
    assert blocks == union_find_blocks(s, hs)


@given(instances())
def test_restricted_worth_matches_oracle(case):
    n, edges, hs, s = case
    g = build_graph(n, edges)
    assert restricted_worth(g, ConferenceStructure(hs), s).coeffs == restricted_coeffs(n, edges, hs, s)


@given(instances(), st.data())
def test_restriction_is_monotone(case, data):
    n, edges, hs, x = case
    h = ConferenceStructure(hs)
    y = data.draw(st.sets(st.sampled_from(sorted(x)))) if x else set()
    hx = restrict_conferences(h, x)
    assert hx.hyperedges <= h.hyperedges
    assert restrict_conferences(hx, y) == restrict_conferences(h, y)


@given(instances(), st.data())
def test_extra_conference_is_null_over_dyadic_structure(case, data):
    n, edges, hs, _ = case
    g = build_graph(n, edges)
    h = dyadic_conferences(g) | hs
    # a conference whose members are pairwise non-adjacent
    pool = list(range(n))
    data.draw(st.randoms()).shuffle(pool)
    independent = []
    for v in pool:
        if all(not g.has_edge(v, u) for u in independent):
            independent.append(v)
    if len(independent) < 2:
        return
    before, after = WorthTable(g, h, g.nodes), WorthTable(g, h | [independent], g.nodes)
    for mask in range(1 << n):
        assert after.worth(mask) == before.worth(mask)
        # every edge is its own conference, so blocks never split an edge
        coalition = [v for v in range(n) if mask >> v & 1]
        assert DeltaPoly(before.worth(mask)) == distance_worth(g, coalition)


def test_extra_conference_can_matter_without_dyads():
    # only {0,1} is a conference: adding {0,2} joins 2 to the block and the
    # edge (1,2) starts to count
    g = build_graph(3, [(0, 1), (1, 2)])
    h = ConferenceStructure([[0, 1]])
    assert restricted_worth(g, h, {0, 1, 2}) == DeltaPoly({1: 2})
    assert restricted_worth(g, h | [[0, 2]], {0, 1, 2}) == DeltaPoly({1: 4, 2: 2})
