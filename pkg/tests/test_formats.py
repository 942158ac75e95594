import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmds.exceptions import ParseError, VertexOutOfRange
from mmds.formats import (
    parse_cnf,
    parse_colored_graph,
    parse_graph,
    parse_intervals,
    parse_solution,
    serialize_cnf,
    serialize_colored_graph,
    serialize_graph,
    serialize_intervals,
    serialize_solution,
)
from mmds.models import CnfFormula, Graph, Solution, closed_neighborhood
from strategies import PROPERTY_SETTINGS, cnfs, complete_graph, graphs, interval_sets, path_graph, two_colored_graphs


class TestParseGraph:
    def test_minimal_graph(self):
        g = parse_graph("p mmds 2 1\ne 1 2")
        assert g.n == 2
        assert g.edges == frozenset({(1, 2)})

    def test_path_with_comments_and_bytes(self):
        g = parse_graph(b"c a path\np mmds 3 2\n\ne 1 2\ne 2 3\n")
        assert g == path_graph(3)

    def test_self_loop_rejected_with_line_number(self):
        with pytest.raises(ParseError) as err:
            parse_graph("p mmds 2 1\ne 1 1")
        assert err.value.line_no == 2
        assert "self-loop" in str(err.value)

    def test_edge_count_must_match_header(self):
        with pytest.raises(ParseError, match="declares 2 edges, found 1"):
            parse_graph("p mmds 3 2\ne 1 2\n")

    def test_duplicate_edge_in_either_orientation(self):
        with pytest.raises(ParseError, match="duplicate edge"):
            parse_graph("p mmds 2 2\ne 1 2\ne 2 1\n")

    def test_vertex_out_of_range(self):
        with pytest.raises(ParseError, match="out of range"):
            parse_graph("p mmds 2 1\ne 1 3\n")

    @pytest.mark.parametrize("text", [
        "e 1 2\n",
        "p mmds 2\n",
        "p graph 2 0\n",
        "p mmds 2 0\nx 1\n",
        "p mmds two 0\n",
        "",
    ])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_graph(text)

    def test_invalid_utf8(self):
        with pytest.raises(ParseError, match="UTF-8"):
            parse_graph(b"p mmds 1 0\n\xff\n")


class TestSerializeGraph:
    def test_canonical_path(self):
        assert serialize_graph(path_graph(3)) == "p mmds 3 2\ne 1 2\ne 2 3\n"

    def test_single_vertex(self):
        assert serialize_graph(Graph.from_edges(1, [])) == "p mmds 1 0\n"

    @PROPERTY_SETTINGS
    @given(graphs(max_n=10))
    def test_parse_inverts_serialize(self, g):
        assert parse_graph(serialize_graph(g)) == g


class TestClosedNeighborhood:
    def test_path_center(self):
        assert closed_neighborhood(path_graph(3), 2) == {1, 2, 3}

    def test_isolated_vertex(self):
        assert closed_neighborhood(Graph.from_edges(3, [(1, 2)]), 3) == {3}

    def test_clique(self):
        k4 = complete_graph(4)
        assert all(closed_neighborhood(k4, v) == {1, 2, 3, 4} for v in k4.vertices)

    def test_unknown_vertex(self):
        with pytest.raises(VertexOutOfRange):
            closed_neighborhood(path_graph(3), 4)

    @PROPERTY_SETTINGS
    @given(graphs())
    def test_adjacency_is_symmetric(self, g):
        for u in g.vertices:
            for v in g.neighbors(u):
                assert u in g.neighbors(v)


class TestOtherFormats:
    def test_positive_cnf(self):
        phi = parse_cnf("p cnf 3 1\n1 2 3 0")
        assert phi.num_vars == 3
        assert phi.clauses == ((1, 2, 3),)
        assert phi.positive_only

    def test_cnf_clause_spanning_lines(self):
        phi = parse_cnf("c x\np cnf 2 2\n1\n-2 0 2 0\n")
        assert phi.clauses == ((1, -2), (2,))
        assert not phi.positive_only

    @pytest.mark.parametrize("text, message", [
        ("p cnf 2 1\n1 2\n", "not 0-terminated"),
        ("p cnf 2 1\n0\n", "empty clause"),
        ("p cnf 2 1\n1 3 0\n", "exceeds variable count"),
        ("p cnf 2 2\n1 0\n", "declares 2 clauses"),
        ("1 0\n", "before header"),
    ])
    def test_cnf_rejections(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_cnf(text)

    def test_colored_k2(self):
        cg = parse_colored_graph("p mmds 2 1\ne 1 2\nn 1 1\nn 2 2\n")
        assert cg.k == 2
        assert cg.classes() == [[1], [2]]
        assert parse_colored_graph(serialize_colored_graph(cg)) == cg

    def test_colored_graph_needs_every_color(self):
        with pytest.raises(ParseError, match="has no color"):
            parse_colored_graph("p mmds 2 1\ne 1 2\nn 1 1\n")
        with pytest.raises(ParseError, match="class 2 is empty"):
            parse_colored_graph("p mmds 2 0\nn 1 1\nn 2 3\n")

    def test_intervals(self):
        iv = parse_intervals("i 1 0 2\ni 7 1 3\n")
        assert iv.intervals == ((1, 0, 2), (7, 1, 3))

    def test_interval_left_after_right(self):
        with pytest.raises(ParseError, match="left 5 > right 3"):
            parse_intervals("i 1 5 3")

    def test_solution_round_trip(self):
        s = parse_solution("3\n1\n", n=4)
        assert s == Solution.of({1, 3})
        assert serialize_solution(s) == "1\n3\n"

    def test_solution_rejects_out_of_range_and_duplicates(self):
        with pytest.raises(ParseError, match="out of range"):
            parse_solution("5\n", n=4)
        with pytest.raises(ParseError, match="duplicate vertex"):
            parse_solution("1\n1\n")


class TestRoundTrip:
    def test_cnf_canonical_text(self):
        phi = CnfFormula.from_clauses(3, [[1, -2], [3]])
        assert serialize_cnf(phi) == "p cnf 3 2\n1 -2 0\n3 0\n"

    def test_intervals_keep_input_order(self):
        text = "i 7 4 9\ni 2 0 1\n"
        assert serialize_intervals(parse_intervals(text)) == text

    @PROPERTY_SETTINGS
    @given(cnfs(max_vars=6, max_clauses=6))
    def test_cnf(self, phi):
        assert parse_cnf(serialize_cnf(phi)) == phi

    @PROPERTY_SETTINGS
    @given(interval_sets())
    def test_intervals(self, iv):
        assert parse_intervals(serialize_intervals(iv)) == iv

    @PROPERTY_SETTINGS
    @given(two_colored_graphs(max_n=8))
    def test_colored_graph(self, cg):
        assert parse_colored_graph(serialize_colored_graph(cg)) == cg

    @PROPERTY_SETTINGS
    @given(st.frozensets(st.integers(min_value=1, max_value=30)))
    def test_solution(self, members):
        s = Solution.of(members)
        assert parse_solution(serialize_solution(s), n=30) == s
