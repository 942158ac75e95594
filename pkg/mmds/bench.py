"""
Acceptance sweeps. Each sweep generates random instances from a seeded
numpy Generator, checks one property exactly and reports the number of
cases, the number of solver runs refused by a budget and whether every
checked case passed. A failing instance is logged in its file format.
"""
import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Set, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from .config import settings
from .exceptions import BudgetExceeded
from .formats import serialize_cnf, serialize_colored_graph, serialize_graph, serialize_intervals
from .models import CnfFormula, ColoredGraph, Graph, Instance, IntervalSet, Solution
from .reductions.mcc import mcc_census, mcc_witness, reduce_mcc, width_bound
from .reductions.mis_split import is_split_certificate, reduce_mis_split
from .reductions.pp1in3sat import reduce_pp1in3sat
from .reductions.sat3 import reduce_sat3
from .reductions.source_oracles import Mis, OneInThree, Sat, brute_source
from .services.checker import is_feasible, membership
from .services.decomposition import (
    NiceTreeDecomposition,
    build_tree_decomposition,
    make_nice,
    validate_decomposition,
)
from .services.interval import greedy_chains, interval_graph
from .services.oracle import brute_feasible, brute_min_membership
from .services.treewidth_dp import DpTable, dp_solve, dp_table_sizes, dp_tables
from .services.vertex_cover import vc_fpt_feasible
from .utils.run_logger import log_bench

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchPlan:
    """Instance counts and size caps per sweep; the defaults are the acceptance sizes"""
    graphs: int = 200
    max_n: int = 14
    inducing_graphs: int = 20
    inducing_max_n: int = 10
    interval_sets: int = 500
    interval_max_n: int = 200
    formulas: int = 100
    split_max_n: int = 8
    forcing_graphs: int = 200
    forcing_max_n: int = 12
    clique_repeats: int = 2
    dp_max_states: int = field(default_factory=lambda: settings.BENCH_DP_MAX_STATES)

    @classmethod
    def quick(cls) -> "BenchPlan":
        return cls(graphs=12, max_n=7, inducing_graphs=3, inducing_max_n=6, interval_sets=40,
                   interval_max_n=40, formulas=12, split_max_n=5, forcing_graphs=12,
                   forcing_max_n=8, clique_repeats=1)


@dataclass
class SweepResult:
    cases: int = 0
    refused: int = 0
    passed: bool = True


def _fail(result: SweepResult, what: str, instance: str) -> SweepResult:
    logger.error(f"{what}, instance:\n{instance}")
    result.passed = False
    return result


def random_graphs(rng: np.random.Generator, count: int, max_n: int) -> List[Graph]:
    """Erdos-Renyi graphs at p 0.2 and 0.4, plus random trees and cycles"""
    graphs = []
    for i in range(count):
        n = int(rng.integers(3, max_n + 1))
        seed = int(rng.integers(1 << 31))
        shape = i % 4
        if shape == 0:
            h = nx.gnp_random_graph(n, 0.2, seed=seed)
        elif shape == 1:
            h = nx.gnp_random_graph(n, 0.4, seed=seed)
        elif shape == 2:
            h = nx.random_labeled_tree(n, seed=seed)
        else:
            h = nx.cycle_graph(n)
        graphs.append(Graph.from_networkx(h))
    return graphs


def random_intervals(rng: np.random.Generator, n: int) -> IntervalSet:
    lefts = rng.integers(0, 4 * n, size=n)
    lengths = rng.integers(0, 12, size=n)
    return IntervalSet.from_triples((i + 1, int(l), int(l + d)) for i, (l, d) in enumerate(zip(lefts, lengths)))


def random_positive_cnf(rng: np.random.Generator, max_vars: int, max_clauses: int) -> CnfFormula:
    n = int(rng.integers(3, max_vars + 1))
    m = int(rng.integers(1, max_clauses + 1))
    clauses = [sorted(int(x) + 1 for x in rng.choice(n, size=3, replace=False)) for _ in range(m)]
    return CnfFormula.from_clauses(n, clauses)


def random_cnf(rng: np.random.Generator, max_vars: int, max_clauses: int) -> CnfFormula:
    n = int(rng.integers(1, max_vars + 1))
    m = int(rng.integers(1, max_clauses + 1))
    clauses = []
    for _ in range(m):
        arity = int(rng.integers(1, 4))
        clauses.append([int(v) * int(s) for v, s in zip(rng.integers(1, n + 1, size=arity),
                                                        rng.choice([-1, 1], size=arity))])
    return CnfFormula.from_clauses(n, clauses)


def random_colored(rng: np.random.Generator, n: int, p: float) -> ColoredGraph:
    """Two color classes, vertices 1..a colored 1 and the rest 2"""
    a = int(rng.integers(1, n))
    h = nx.gnp_random_graph(n, p, seed=int(rng.integers(1 << 31)))
    g = Graph.from_networkx(h)
    return ColoredGraph.from_colors(g, {v: 1 if v <= a else 2 for v in g.vertices})


def planted_clique(rng: np.random.Generator, k: int, n: int, p: float = 0.3) -> Tuple[ColoredGraph, List[int]]:
    """Classes V_i = ((i-1)n, in], one planted vertex per class, random extra cross edges"""
    colors = {v: (v - 1) // n + 1 for v in range(1, k * n + 1)}
    clique = [(i - 1) * n + int(rng.integers(1, n + 1)) for i in range(1, k + 1)]
    edges = set(itertools.combinations(clique, 2))
    for u, v in itertools.combinations(range(1, k * n + 1), 2):
        if colors[u] != colors[v] and rng.random() < p:
            edges.add((u, v))
    g = Graph.from_edges(k * n, sorted(edges))
    return ColoredGraph.from_colors(g, colors), clique


def _mmds_feasible(inst: Instance, jobs: Optional[int]) -> bool:
    """Exhaustive oracle, or the vertex-cover solver past the oracle budget"""
    try:
        return brute_feasible(inst, jobs=jobs) is not None
    except BudgetExceeded:
        return vc_fpt_feasible(inst, jobs=jobs) is not None


def cross_validation(rng, plan: BenchPlan, graphs: List[Graph], jobs: Optional[int]) -> SweepResult:
    result = SweepResult()
    solvers = [
        lambda inst: dp_solve(inst, max_states=plan.dp_max_states),
        lambda inst: vc_fpt_feasible(inst, jobs=jobs),
    ]
    for g in graphs:
        for k in range(1, g.max_degree + 2):
            inst = Instance(g, k)
            answers = [brute_feasible(inst, jobs=jobs)]
            for solve in solvers:
                try:
                    answers.append(solve(inst))
                except BudgetExceeded as e:
                    logger.debug(f"Refused n={g.n} m={g.m} k={k}: {e}")
                    result.refused += 1
            if len({a is None for a in answers}) != 1:
                return _fail(result, f"Solvers disagree at k={k}", serialize_graph(g))
            if any(a is not None and not is_feasible(inst, a).feasible for a in answers):
                return _fail(result, f"Infeasible witness at k={k}", serialize_graph(g))
            result.cases += 1
    return result


def _subtree_vertices(ntd: NiceTreeDecomposition) -> List[Set[int]]:
    seen: List[Set[int]] = []
    for node in ntd.nodes:
        below = set(node.bag)
        for child in node.children:
            below |= seen[child]
        seen.append(below)
    return seen


def inducing_states(g: Graph, k: int, bag: Tuple[int, ...], processed: Set[int]) -> Set[Tuple[int, ...]]:
    """
    Digits c * (k + 1) + d over the bag for every S within the processed
    vertices that keeps forgotten vertices in [1, k] and bag counts <= k
    """
    order = sorted(processed)
    index = {v: i for i, v in enumerate(order)}
    closed = np.zeros((len(order), len(order)), dtype=np.int64)
    for v in order:
        for u in g.closed_neighborhood(v):
            if u in index:
                closed[index[v], index[u]] = 1
    masks = (np.arange(1 << len(order))[:, None] >> np.arange(len(order))) & 1
    counts = masks @ closed

    cols = [index[v] for v in bag]
    forgotten = [index[v] for v in order if v not in bag]
    ok = ((counts[:, forgotten] >= 1) & (counts[:, forgotten] <= k)).all(axis=1)
    ok &= (counts[:, cols] <= k).all(axis=1)
    digits = masks[ok][:, cols] * (k + 1) + counts[ok][:, cols]
    return {tuple(int(x) for x in row) for row in digits}


def table_states(table: DpTable) -> Set[Tuple[int, ...]]:
    if table.table.ndim == 0:
        return {()} if bool(table.table[()]) else set()
    return {tuple(int(x) for x in row) for row in np.argwhere(table.table)}


def dp_inducing_sets(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for g in random_graphs(rng, plan.inducing_graphs, plan.inducing_max_n):
        ntd = make_nice(build_tree_decomposition(g))
        below = _subtree_vertices(ntd)
        for k in (1, 2):
            try:
                tables = dp_tables(Instance(g, k), ntd, plan.dp_max_states)
            except BudgetExceeded:
                result.refused += 1
                continue
            for i, (node, table) in enumerate(zip(ntd.nodes, tables)):
                if table_states(table) != inducing_states(g, k, node.bag, below[i]):
                    return _fail(result, f"DP table of node {i} differs at k={k}", serialize_graph(g))
            result.cases += 1
    return result


def table_shape(rng, plan: BenchPlan, graphs: List[Graph], jobs) -> SweepResult:
    result = SweepResult()
    for g in graphs:
        ntd = make_nice(build_tree_decomposition(g))
        for k in (1, 2):
            try:
                sizes = dp_table_sizes(Instance(g, k), ntd, plan.dp_max_states)
            except BudgetExceeded:
                result.refused += 1
                continue
            if sizes != [(2 * (k + 1)) ** len(node.bag) for node in ntd.nodes]:
                return _fail(result, f"DP table sizes off at k={k}", serialize_graph(g))
            result.cases += 1
    return result


def _is_chain_family(g: Graph, chains: List[List[int]]) -> bool:
    """Chosen intervals meet iff they are consecutive in one chain"""
    chosen = [(c, i, v) for c, chain in enumerate(chains) for i, v in enumerate(chain)]
    for a, (ca, ia, u) in enumerate(chosen):
        for cb, ib, v in chosen[a + 1:]:
            if g.has_edge(u, v) != (ca == cb and abs(ia - ib) == 1):
                return False
    return True


def interval_bound(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for _ in range(plan.interval_sets):
        iv = random_intervals(rng, int(rng.integers(1, plan.interval_max_n + 1)))
        g = interval_graph(iv)
        chains = greedy_chains(iv)
        chosen = Solution.of(v for chain in chains for v in chain)
        if not is_feasible(Instance(g, 3), chosen).feasible or not _is_chain_family(g, chains):
            return _fail(result, "Greedy output breaks membership 3 or the chain shape", serialize_intervals(iv))
        result.cases += 1
    return result


def one_in_three_equivalence(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for _ in range(plan.formulas):
        phi = random_positive_cnf(rng, 8, 5)
        out = reduce_pp1in3sat(phi)
        if brute_source(OneInThree(phi)) != _mmds_feasible(out.instance, jobs):
            return _fail(result, "1-in-3 reduction changes the answer", serialize_cnf(phi))
        result.cases += 1
    return result


def split_equivalence(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for _ in range(plan.formulas):
        g = random_colored(rng, int(rng.integers(2, plan.split_max_n + 1)), 0.5)
        out = reduce_mis_split(g, 2)
        if not is_split_certificate(out):
            return _fail(result, "Output is not a split graph", serialize_colored_graph(g))
        if brute_source(Mis(g)) != _mmds_feasible(out.instance, jobs):
            return _fail(result, "Split reduction changes the answer", serialize_colored_graph(g))
        result.cases += 1
    return result


def sat_equivalence(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for _ in range(plan.formulas):
        phi = random_cnf(rng, 2, 2)
        out = reduce_sat3(phi, 2)
        g = out.instance.graph
        cover = out.vertex_cover
        if len(cover) != (phi.num_vars + 1) * 3 or any(u not in cover and v not in cover for u, v in g.edges):
            return _fail(result, "Vertex cover certificate is wrong", serialize_cnf(phi))
        if brute_source(Sat(phi)) != (brute_feasible(out.instance, jobs=jobs) is not None):
            return _fail(result, "3-SAT reduction changes the answer", serialize_cnf(phi))
        result.cases += 1
    return result


def clique_forward(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for k in (2, 3):
        for _ in range(plan.clique_repeats):
            cg, clique = planted_clique(rng, k, 2)
            out = reduce_mcc(cg)
            layout = out.layout
            h = out.instance.graph
            counts = [len(e) for e in layout.edge_gadgets.values()]
            if h.n != mcc_census(k, 2, counts):
                return _fail(result, "Vertex census differs", serialize_colored_graph(cg))
            s = mcc_witness(out, clique)
            if not is_feasible(out.instance, s).feasible:
                return _fail(result, f"Witness of clique {clique} is infeasible", serialize_colored_graph(cg))
            if any(membership(h, s, c) != out.instance.k for c in layout.connector_vertices()):
                return _fail(result, "Connector membership is not n + 1", serialize_colored_graph(cg))
            verdict = validate_decomposition(h, out.decomposition, path_only=True)
            if not verdict.valid or verdict.width > width_bound(k):
                return _fail(result, f"Path decomposition: {verdict}", serialize_colored_graph(cg))
            result.cases += 1
    return result


def forcing_soundness(rng, plan: BenchPlan, graphs, jobs) -> SweepResult:
    result = SweepResult()
    for g in random_graphs(rng, plan.forcing_graphs, plan.forcing_max_n - 3):
        # pendants make the forcing rules fire
        h = g.to_networkx()
        h.add_edges_from((1, f"p{t}") for t in range(3))
        g2 = Graph.from_networkx(nx.convert_node_labels_to_integers(h, first_label=1))
        for k in range(1, g2.max_degree + 2):
            inst = Instance(g2, k)
            fast = brute_feasible(inst, use_forcing=True, jobs=jobs)
            slow = brute_feasible(inst, use_forcing=False, jobs=jobs)
            if (fast is None) != (slow is None):
                return _fail(result, f"Forcing changes the answer at k={k}", serialize_graph(g2))
            result.cases += 1
    return result


def monotonicity(rng, plan: BenchPlan, graphs: List[Graph], jobs) -> SweepResult:
    result = SweepResult()
    for g in graphs:
        k_star, _ = brute_min_membership(g, jobs=jobs)
        feasible = [brute_feasible(Instance(g, k), jobs=jobs) is not None for k in range(1, g.max_degree + 2)]
        if (
            k_star > g.max_degree + 1
            or any(a and not b for a, b in zip(feasible, feasible[1:]))
            or feasible.index(True) + 1 != k_star
        ):
            return _fail(result, f"Feasibility is not monotone from k*={k_star}", serialize_graph(g))
        result.cases += 1
    return result


SWEEPS: List[Tuple[str, Callable[..., SweepResult]]] = [
    ("1 solver cross-validation", cross_validation),
    ("2 DP tables match inducing sets", dp_inducing_sets),
    ("3 DP table shape", table_shape),
    ("4 interval greedy membership <= 3", interval_bound),
    ("5 1-in-3 SAT reduction equivalence", one_in_three_equivalence),
    ("6 split reduction equivalence", split_equivalence),
    ("7 3-SAT reduction equivalence and cover", sat_equivalence),
    ("8 clique reduction witness and pathwidth", clique_forward),
    ("9 forcing soundness", forcing_soundness),
    ("10 monotonicity", monotonicity),
]

COLUMNS = ["criterion", "cases", "refused", "passed", "seconds"]


def run_bench(seed: int = 0, jobs: Optional[int] = None, plan: Optional[BenchPlan] = None) -> pd.DataFrame:
    plan = plan if plan is not None else BenchPlan()
    rng = np.random.default_rng(seed)
    graphs = random_graphs(rng, plan.graphs, plan.max_n)
    rows = []
    for name, sweep in SWEEPS:
        start = time.perf_counter()
        result = sweep(rng, plan, graphs, jobs)
        elapsed = time.perf_counter() - start
        log_bench(name, result.cases, result.refused, result.passed, elapsed)
        rows.append({
            "criterion": name,
            "cases": result.cases,
            "refused": result.refused,
            "passed": result.passed,
            "seconds": round(elapsed, 2),
        })
    return pd.DataFrame(rows, columns=COLUMNS)
