import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mmds.exceptions import BudgetExceeded, InvalidCover
from mmds.models import Instance, Solution
from mmds.services.checker import is_feasible
from mmds.services.oracle import brute_feasible
from mmds.services.vertex_cover import (
    CmmdsProgram,
    build_cmmds,
    min_vertex_cover,
    realize,
    solve_cmmds,
    split_cover,
    vc_fpt_feasible,
)
from strategies import PROPERTY_SETTINGS, cmmds_arrays, graphs, path_graph, star_graph


class TestMinVertexCover:
    def test_examples(self, p3, c4, k4):
        assert min_vertex_cover(p3) == {2}
        assert min_vertex_cover(c4) == {1, 3}
        assert len(min_vertex_cover(k4)) == 3

    def test_star_needs_only_its_center(self):
        assert min_vertex_cover(star_graph(6)) == {1}

    def test_over_branch_limit(self):
        with pytest.raises(BudgetExceeded, match="vertex cover size"):
            min_vertex_cover(path_graph(10), limit=2)

    @PROPERTY_SETTINGS
    @given(graphs(max_n=7))
    def test_is_a_cover(self, g):
        cover = min_vertex_cover(g)
        assert all(u in cover or v in cover for u, v in g.edges)


class TestSplit:
    def test_path_center(self, p3):
        split = split_cover(Instance(p3, 1), frozenset({2}), frozenset({2}))
        assert split.I == {1, 3}
        assert split.I1 == frozenset()
        assert split.Ie == frozenset()
        assert split.fixed == {2}

    def test_empty_c1_forces_the_independent_side(self, p3):
        split = split_cover(Instance(p3, 2), frozenset({2}), frozenset())
        assert split.I1 == {1, 3}

    def test_not_a_cover(self, p3):
        with pytest.raises(InvalidCover, match="edge 2 3 is uncovered"):
            split_cover(Instance(p3, 1), frozenset({1}), frozenset())

    def test_c1_outside_cover(self, p3):
        with pytest.raises(InvalidCover, match="not a subset"):
            split_cover(Instance(p3, 1), frozenset({2}), frozenset({1}))


class TestBuildProgram:
    def test_path_center_realizes_itself(self, p3):
        inst = Instance(p3, 1)
        program = build_cmmds(inst, frozenset({2}), frozenset({2}))
        assert program is not None
        assert program.classes == ()
        assert program.lam == {2: 1}
        counts = solve_cmmds(program)
        assert counts == ()
        assert realize(program, counts).sorted() == [2]

    def test_path_without_center_is_overfull(self, p3):
        assert build_cmmds(Instance(p3, 1), frozenset({2}), frozenset()) is None

    def test_cycle_two_adjacent_fixed(self, c4):
        assert build_cmmds(Instance(c4, 1), frozenset({1, 2, 3}), frozenset({1, 2})) is None

    def test_star_leaves_form_one_class(self):
        g = star_graph(4)
        program = build_cmmds(Instance(g, 3), frozenset({1}), frozenset())
        # with C1 empty every leaf is fixed
        assert program is None
        program = build_cmmds(Instance(g, 5), frozenset({1}), frozenset())
        assert program is not None
        assert program.split.I1 == {2, 3, 4, 5}
        assert program.lam == {1: 4}


class TestClassSoundness:
    @PROPERTY_SETTINGS
    @given(graphs(max_n=6), st.randoms(use_true_random=False))
    def test_counts_decide_feasibility(self, g, rnd):
        cover = frozenset(min_vertex_cover(g))
        for k in range(1, g.max_degree + 2):
            inst = Instance(g, k)
            for r in range(len(cover) + 1):
                for c1 in itertools.combinations(sorted(cover), r):
                    program = build_cmmds(inst, cover, frozenset(c1))
                    if program is None:
                        continue
                    assert len(program.constraints) <= 2 * len(cover)
                    assert sum(c.population for c in program.classes) == len(program.split.Ie)
                    for x in itertools.product(*(range(c.population + 1) for c in program.classes)):
                        lowest = is_feasible(inst, realize(program, x)).feasible
                        assert lowest == program.satisfied_by(x)
                        # any members of the same class, same counts
                        swapped = set(program.split.fixed)
                        for cls_, count in zip(program.classes, x):
                            swapped.update(rnd.sample(cls_.members, count))
                        assert is_feasible(inst, Solution.of(swapped)).feasible == lowest


class TestSolveProgram:
    def test_least_count(self):
        assert solve_cmmds(CmmdsProgram.from_arrays([3], [[1]], [1], [2])) == (1,)

    def test_contradiction(self):
        program = CmmdsProgram.from_arrays([1], [[1], [1]], [1, 0], [1, 0])
        assert solve_cmmds(program) is None

    def test_unconstrained_program_takes_nothing(self):
        assert solve_cmmds(CmmdsProgram.from_arrays([2, 2], [], [], [])) == (0, 0)

    def test_satisfied_by(self):
        program = CmmdsProgram.from_arrays([2, 1], [[1, 1]], [2], [2])
        assert program.satisfied_by((1, 1))
        assert not program.satisfied_by((2, 1))
        assert not program.satisfied_by((3, 0))

    @PROPERTY_SETTINGS
    @given(cmmds_arrays())
    def test_matches_enumeration(self, arrays):
        populations, rows, lower, upper = arrays
        program = CmmdsProgram.from_arrays(populations, rows, lower, upper)
        expected = next(
            (x for x in itertools.product(*(range(p + 1) for p in populations))
             if program.satisfied_by(x)),
            None,
        )
        assert solve_cmmds(program) == expected


class TestVcFpt:
    def test_examples(self, p3, c4):
        assert vc_fpt_feasible(Instance(p3, 1), jobs=1).sorted() == [2]
        assert vc_fpt_feasible(Instance(c4, 1), jobs=1) is None
        s = vc_fpt_feasible(Instance(c4, 2), jobs=1)
        assert is_feasible(Instance(c4, 2), s).feasible

    def test_cover_budget(self):
        with pytest.raises(BudgetExceeded):
            vc_fpt_feasible(Instance(path_graph(12), 1), max_cover=3, jobs=1)

    @PROPERTY_SETTINGS
    @given(graphs(max_n=7))
    def test_agrees_with_oracle(self, g):
        for k in range(1, g.max_degree + 2):
            inst = Instance(g, k)
            s = vc_fpt_feasible(inst, jobs=1)
            assert (s is None) == (brute_feasible(inst) is None)
            if s is not None:
                assert is_feasible(inst, s).feasible
