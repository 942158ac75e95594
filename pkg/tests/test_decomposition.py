import pytest
from hypothesis import given

from mmds.exceptions import InvalidDecomposition, ParseError
from mmds.models import Graph, Instance
from mmds.services.decomposition import (
    NodeKind,
    TreeDecomposition,
    ViolationKind,
    build_tree_decomposition,
    check_nice,
    make_nice,
    parse_td,
    path_decomposition,
    serialize_td,
    validate_decomposition,
)
from mmds.services.treewidth_dp import dp_solve
from strategies import PROPERTY_SETTINGS, complete_graph, cycle_graph, graphs, path_graph, star_graph


class TestMinFill:
    def test_tree_has_width_one(self):
        td = build_tree_decomposition(star_graph(5))
        assert td.width == 1
        assert validate_decomposition(star_graph(5), td).valid

    def test_clique(self):
        assert build_tree_decomposition(complete_graph(5)).width == 4

    def test_cycle(self):
        assert build_tree_decomposition(cycle_graph(4)).width == 2

    @PROPERTY_SETTINGS
    @given(graphs(max_n=10))
    def test_always_valid(self, g):
        td = build_tree_decomposition(g)
        assert validate_decomposition(g, td).valid

    def test_deterministic(self):
        g = cycle_graph(7)
        assert build_tree_decomposition(g) == build_tree_decomposition(g)


class TestValidate:
    def test_path_bags(self, p3):
        td = path_decomposition([frozenset({1, 2}), frozenset({2, 3})])
        verdict = validate_decomposition(p3, td, path_only=True)
        assert verdict.valid
        assert str(verdict) == "VALID width 1"

    def test_missing_vertex_breaks_edge_coverage(self, p3):
        td = path_decomposition([frozenset({1, 2}), frozenset({3})])
        verdict = validate_decomposition(p3, td)
        assert verdict.kind is ViolationKind.UNCOVERED_EDGE
        assert str(verdict) == "UNCOVERED_EDGE 2 3"

    def test_star_bags_chained_in_a_path(self):
        g = star_graph(4)
        td = path_decomposition([frozenset({1, leaf}) for leaf in range(2, 6)])
        verdict = validate_decomposition(g, td, path_only=True)
        assert verdict.valid and verdict.width == 1

    def test_uncovered_vertex(self):
        g = Graph.from_edges(3, [(1, 2)])
        td = path_decomposition([frozenset({1, 2})])
        assert validate_decomposition(g, td).kind is ViolationKind.UNCOVERED_VERTEX

    def test_disconnected_occurrence(self, p3):
        td = path_decomposition([frozenset({1, 2}), frozenset({2, 3}), frozenset({1})])
        verdict = validate_decomposition(p3, td)
        assert verdict.kind is ViolationKind.DISCONNECTED_OCCURRENCE
        assert verdict.witness == (1,)

    def test_cycle_in_tree(self, p3):
        td = TreeDecomposition(
            bags={1: frozenset({1, 2}), 2: frozenset({2, 3}), 3: frozenset({2})},
            tree_edges=((1, 2), (2, 3), (1, 3)),
        )
        assert validate_decomposition(p3, td).kind is ViolationKind.NOT_A_TREE

    def test_unknown_vertex(self, p3):
        td = path_decomposition([frozenset({1, 2}), frozenset({2, 3, 9})])
        assert validate_decomposition(p3, td).kind is ViolationKind.UNKNOWN_VERTEX

    def test_header_vertex_count_must_match(self, p3):
        td = path_decomposition([frozenset({1, 2}), frozenset({2, 3})], 4)
        verdict = validate_decomposition(p3, td)
        assert verdict.kind is ViolationKind.VERTEX_COUNT_MISMATCH
        assert str(verdict) == "VERTEX_COUNT_MISMATCH 4 3"
        with pytest.raises(InvalidDecomposition):
            dp_solve(Instance(p3, 1), td)

    def test_star_tree_is_not_a_path(self):
        g = star_graph(3)
        td = TreeDecomposition(
            bags={1: frozenset({1}), 2: frozenset({1, 2}), 3: frozenset({1, 3}), 4: frozenset({1, 4})},
            tree_edges=((1, 2), (1, 3), (1, 4)),
        )
        assert validate_decomposition(g, td).valid
        assert validate_decomposition(g, td, path_only=True).kind is ViolationKind.NOT_A_PATH


class TestNice:
    def test_single_bag(self):
        td = TreeDecomposition(bags={1: frozenset({1, 2})}, tree_edges=())
        ntd = make_nice(td)
        kinds = [node.kind for node in ntd.nodes]
        assert kinds == [NodeKind.LEAF, NodeKind.INTRODUCE, NodeKind.INTRODUCE,
                         NodeKind.FORGET, NodeKind.FORGET]
        assert ntd.nodes[ntd.root].bag == ()
        check_nice(Graph.from_edges(2, [(1, 2)]), ntd)

    def test_path_needs_no_join(self, p3):
        ntd = make_nice(path_decomposition([frozenset({1, 2}), frozenset({2, 3})]))
        assert ntd.count(NodeKind.JOIN) == 0
        check_nice(p3, ntd)

    def test_three_branches_make_two_joins(self):
        g = star_graph(3)
        td = TreeDecomposition(
            bags={1: frozenset({1}), 2: frozenset({1, 2}), 3: frozenset({1, 3}), 4: frozenset({1, 4})},
            tree_edges=((1, 2), (1, 3), (1, 4)),
        )
        ntd = make_nice(td)
        assert ntd.count(NodeKind.JOIN) == 2
        assert ntd.width == 1
        check_nice(g, ntd)

    @PROPERTY_SETTINGS
    @given(graphs(max_n=10))
    def test_nice_form_of_min_fill(self, g):
        td = build_tree_decomposition(g)
        ntd = make_nice(td)
        check_nice(g, ntd)
        assert ntd.width == td.width

    def test_check_nice_rejects_wrong_graph(self, p3):
        ntd = make_nice(path_decomposition([frozenset({1, 2}), frozenset({2, 3})]))
        with pytest.raises(InvalidDecomposition):
            check_nice(path_graph(4), ntd)


class TestTdFormat:
    TEXT = "c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"

    def test_parse(self, p3):
        td = parse_td(self.TEXT)
        assert td.bags == {1: {1, 2}, 2: {2, 3}}
        assert td.tree_edges == ((1, 2),)
        assert validate_decomposition(p3, td).valid

    def test_serialize(self):
        td = parse_td(self.TEXT)
        assert serialize_td(td) == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"

    @pytest.mark.parametrize("text, message", [
        ("s td 2 2 3\nb 1 1 2\n", "declares 2 bags"),
        ("s td 1 3 3\nb 1 1 2\n", "max bag size 3"),
        ("s td 1 2 3\nb 1 1 4\n", "out of range"),
        ("s td 1 2 3\nb 1 1 1\n", "repeats a vertex"),
        ("s td 2 1 3\nb 1 1\nb 2 2\n1 3\n", "bag id 3 out of range"),
        ("b 1 1\n", "before header"),
        ("s td 1 1 1\nb 1 1\nb 1 1\n", "defined twice"),
    ])
    def test_rejections(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_td(text)
