import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from mmds.exceptions import BudgetExceeded, InvalidDecomposition
from mmds.models import Instance
from mmds.services.checker import is_feasible
from mmds.services.decomposition import (
    TreeDecomposition,
    build_tree_decomposition,
    make_nice,
    path_decomposition,
)
from mmds.services.oracle import brute_feasible
from mmds.services.treewidth_dp import dp_feasible, dp_solve, dp_table_sizes, dp_tables, dp_witness
from strategies import PROPERTY_SETTINGS, complete_graph, graphs


def _nice(g):
    return make_nice(build_tree_decomposition(g))


def test_path_k1(p3):
    inst = Instance(p3, 1)
    assert dp_feasible(inst, _nice(p3))
    assert is_feasible(inst, dp_witness(inst, _nice(p3))).feasible


def test_cycle(c4):
    assert not dp_feasible(Instance(c4, 1), _nice(c4))
    assert dp_witness(Instance(c4, 1), _nice(c4)) is None
    assert dp_feasible(Instance(c4, 2), _nice(c4))


def test_supplied_path_decomposition(p3):
    td = path_decomposition([frozenset({1, 2}), frozenset({2, 3})], 3)
    s = dp_solve(Instance(p3, 1), td)
    assert s is not None and is_feasible(Instance(p3, 1), s).feasible


def test_invalid_decomposition_is_refused(p3):
    td = path_decomposition([frozenset({1, 2}), frozenset({3})], 3)
    with pytest.raises(InvalidDecomposition):
        dp_solve(Instance(p3, 1), td)


def test_table_budget():
    g = complete_graph(6)
    with pytest.raises(BudgetExceeded) as err:
        dp_solve(Instance(g, 2), max_states=1000)
    assert err.value.what == "DP table states"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_table_shape(k):
    g = complete_graph(4)
    ntd = _nice(g)
    sizes = dp_table_sizes(Instance(g, k), ntd)
    assert sizes == [(2 * (k + 1)) ** len(node.bag) for node in ntd.nodes]


@PROPERTY_SETTINGS
@given(graphs(max_n=8))
def test_agrees_with_oracle(g):
    ntd = _nice(g)
    for k in range(1, g.max_degree + 2):
        inst = Instance(g, k)
        expected = brute_feasible(inst) is not None
        witness = dp_witness(inst, ntd)
        assert (witness is not None) == expected
        if witness is not None:
            assert is_feasible(inst, witness).feasible


def _subtree_vertices(ntd):
    seen = []
    for node in ntd.nodes:
        below = set(node.bag)
        for child in node.children:
            below |= seen[child]
        seen.append(below)
    return seen


@settings(PROPERTY_SETTINGS, max_examples=8)
@given(graphs(max_n=10))
def test_every_table_entry_has_an_inducing_set(g):
    ntd = _nice(g)
    below = _subtree_vertices(ntd)
    for k in (1, 2):
        if (2 * k + 2) ** (ntd.width + 1) > 1 << 20:
            continue
        inst = Instance(g, k)
        tables = dp_tables(inst, ntd)
        for node, table, processed in zip(ntd.nodes, tables, below):
            forgotten = processed - set(node.bag)
            expected = set()
            for r in range(len(processed) + 1):
                for s in itertools.combinations(sorted(processed), r):
                    s = set(s)
                    counts = {v: len(g.closed_neighborhood(v) & s) for v in processed}
                    if any(not 1 <= counts[u] <= k for u in forgotten):
                        continue
                    if any(counts[v] > k for v in node.bag):
                        continue
                    expected.add(tuple((v in s) * (k + 1) + counts[v] for v in node.bag))
            actual = {tuple(int(x) for x in row) for row in np.argwhere(table.table)}
            if not node.bag:
                actual = {()} if bool(table.table[()]) else set()
            assert actual == expected


def test_empty_tree_decomposition_is_refused(p3):
    with pytest.raises(InvalidDecomposition):
        dp_solve(Instance(p3, 1), TreeDecomposition(bags={}, tree_edges=(), n=3))
