import pytest
from hypothesis import given

from mmds.exceptions import GraphError
from mmds.models import Instance, IntervalSet
from mmds.services.checker import is_feasible, membership
from mmds.services.interval import greedy_chains, greedy_dominating, greedy_max_membership, interval_graph
from strategies import PROPERTY_SETTINGS, interval_sets

THREE = IntervalSet.from_triples([(1, 0, 3), (2, 2, 5), (3, 4, 8)])


def test_touching_endpoints_intersect():
    g = interval_graph(IntervalSet.from_triples([(1, 0, 2), (2, 2, 4), (3, 5, 6)]))
    assert g.edges == frozenset({(1, 2)})


def test_graph_of_chain():
    assert interval_graph(THREE).edges == frozenset({(1, 2), (2, 3)})


def test_single_interval():
    iv = IntervalSet.from_triples([(9, 1, 1)])
    s = greedy_dominating(iv)
    assert s.sorted() == [1]
    assert iv.ids_of(s) == [9]


def test_chain_takes_all_three():
    s = greedy_dominating(THREE)
    assert greedy_chains(THREE) == [[1, 2, 3]]
    assert s.sorted() == [1, 2, 3]
    assert membership(interval_graph(THREE), s, 2) == 3
    assert greedy_max_membership(THREE) == 3


def test_nested_intervals_need_one():
    iv = IntervalSet.from_triples([(1, 0, 10), (2, 1, 2), (3, 4, 9)])
    assert greedy_dominating(iv).sorted() == [1]


def test_gap_restarts_the_chain():
    iv = IntervalSet.from_triples([(5, 10, 12), (6, 0, 1), (7, 1, 3)])
    s = greedy_dominating(iv)
    # vertex 2 is the leftmost interval, then 3 crosses its right end
    assert s.sorted() == [1, 2, 3]
    assert iv.ids_of(s) == [5, 6, 7]
    assert greedy_chains(iv) == [[2, 3], [1]]


def test_empty_set():
    with pytest.raises(GraphError):
        greedy_dominating(IntervalSet.from_triples([]))


def test_duplicate_ids_rejected():
    with pytest.raises(GraphError, match="duplicate interval id"):
        IntervalSet.from_triples([(1, 0, 1), (1, 2, 3)])


@PROPERTY_SETTINGS
@given(interval_sets())
def test_greedy_is_feasible_at_three(iv):
    g = interval_graph(iv)
    assert is_feasible(Instance(g, 3), greedy_dominating(iv)).feasible


@PROPERTY_SETTINGS
@given(interval_sets(max_n=12))
def test_graph_matches_pairwise_overlap(iv):
    g = interval_graph(iv)
    for a in range(len(iv)):
        for b in range(a + 1, len(iv)):
            _, la, ra = iv.intervals[a]
            _, lb, rb = iv.intervals[b]
            assert g.has_edge(a + 1, b + 1) == (max(la, lb) <= min(ra, rb))


@PROPERTY_SETTINGS
@given(interval_sets())
def test_chains_touch_only_their_neighbors(iv):
    g = interval_graph(iv)
    chosen = [(c, i, v) for c, chain in enumerate(greedy_chains(iv)) for i, v in enumerate(chain)]
    assert len({v for _, _, v in chosen}) == len(chosen)
    for a, (ca, ia, u) in enumerate(chosen):
        for cb, ib, v in chosen[a + 1:]:
            consecutive = ca == cb and abs(ia - ib) == 1
            assert g.has_edge(u, v) == consecutive
