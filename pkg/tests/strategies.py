"""Hypothesis strategies shared by the property tests."""
import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from mmds.models import CnfFormula, ColoredGraph, Graph, IntervalSet

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    if not pairs:
        return Graph.from_edges(n, [])
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def interval_sets(draw: st.DrawFn, max_n: int = 40) -> IntervalSet:
    n = draw(st.integers(min_value=1, max_value=max_n))
    triples = []
    for i in range(1, n + 1):
        left = draw(st.integers(min_value=0, max_value=60))
        length = draw(st.integers(min_value=0, max_value=15))
        triples.append((i, left, left + length))
    return IntervalSet.from_triples(triples)


@st.composite
def positive_three_cnfs(draw: st.DrawFn, max_vars: int = 6, max_clauses: int = 4) -> CnfFormula:
    n = draw(st.integers(min_value=3, max_value=max_vars))
    clause = st.lists(st.integers(min_value=1, max_value=n), min_size=3, max_size=3, unique=True)
    clauses = draw(st.lists(clause, min_size=1, max_size=max_clauses))
    return CnfFormula.from_clauses(n, clauses)


@st.composite
def cnfs(draw: st.DrawFn, max_vars: int = 2, max_clauses: int = 2) -> CnfFormula:
    n = draw(st.integers(min_value=1, max_value=max_vars))
    literal = st.integers(min_value=1, max_value=n).flatmap(lambda v: st.sampled_from([v, -v]))
    clauses = draw(st.lists(st.lists(literal, min_size=1, max_size=3), min_size=1, max_size=max_clauses))
    return CnfFormula.from_clauses(n, clauses)


@st.composite
def two_colored_graphs(draw: st.DrawFn, max_n: int = 5) -> ColoredGraph:
    g = draw(graphs(min_n=2, max_n=max_n))
    first = draw(st.integers(min_value=1, max_value=g.n - 1))
    return ColoredGraph.from_colors(g, {v: 1 if v <= first else 2 for v in g.vertices})


@st.composite
def cmmds_arrays(draw: st.DrawFn):
    """(populations, incidence rows, lower, upper) of a small class-count program"""
    classes = draw(st.integers(min_value=1, max_value=4))
    constraints = draw(st.integers(min_value=0, max_value=4))
    populations = draw(st.lists(st.integers(min_value=0, max_value=3), min_size=classes, max_size=classes))
    rows, lower, upper = [], [], []
    for _ in range(constraints):
        rows.append(draw(st.lists(st.integers(min_value=0, max_value=1), min_size=classes, max_size=classes)))
        lo = draw(st.integers(min_value=0, max_value=3))
        lower.append(lo)
        upper.append(draw(st.integers(min_value=lo, max_value=5)))
    return populations, rows, lower, upper


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(itertools.combinations(range(1, n + 1), 2)))


def star_graph(leaves: int) -> Graph:
    """Center 1, leaves 2..leaves+1"""
    return Graph.from_edges(leaves + 1, [(1, v) for v in range(2, leaves + 2)])
