"""
Positive 1-in-3 SAT to MMDS with k = 1.

Vertices: x_i = i, hat x_i = n + i, clause c_l = 2n + l. Each x_i is joined
to the clauses containing it and to its pendant hat x_i. A perfect code
must hold exactly one of x_i, hat x_i, and exactly one variable vertex per
clause.
"""
import logging
from typing import Sequence

import networkx as nx

from ..exceptions import ReductionError
from ..models import CnfFormula, Instance, Solution
from .base import GraphBuilder, ReductionOutput

logger = logging.getLogger(__name__)


def check_positive_three(phi: CnfFormula) -> None:
    if not phi.positive_only:
        raise ReductionError("formula has a negative literal")
    for l, clause in enumerate(phi.clauses, start=1):
        if len(clause) != 3:
            raise ReductionError(f"clause {l} has {len(clause)} literals, expected 3")
        if len(set(clause)) != 3:
            raise ReductionError(f"clause {l} repeats a variable")


def reduce_pp1in3sat(phi: CnfFormula) -> ReductionOutput:
    check_positive_three(phi)
    n = phi.num_vars
    b = GraphBuilder()
    xs = b.vertices([f"var x_{i} pos" for i in range(1, n + 1)])
    hats = b.vertices([f"var x_{i} hat" for i in range(1, n + 1)])
    clauses = b.vertices([f"clause c_{l}" for l in range(1, phi.num_clauses + 1)])

    for x, hat in zip(xs, hats):
        b.edge(x, hat)
    for c, clause in zip(clauses, phi.clauses):
        for var in clause:
            b.edge(xs[var - 1], c)

    g = b.graph()
    logger.info(f"1-in-3 reduction: {n} variables, {phi.num_clauses} clauses -> {g.n} vertices")
    return ReductionOutput(
        instance=Instance(g, 1),
        vertex_labels=b.labels,
        source_ref=f"positive 3-CNF with {n} variables and {phi.num_clauses} clauses",
        layout=phi,
    )


def pp1in3sat_witness(out: ReductionOutput, assignment: Sequence[bool]) -> Solution:
    """x_i for true variables, hat x_i for false ones; assignment[i-1] is x_i"""
    phi: CnfFormula = out.layout
    if len(assignment) != phi.num_vars:
        raise ReductionError(f"assignment has {len(assignment)} values, expected {phi.num_vars}")
    for l, clause in enumerate(phi.clauses, start=1):
        if sum(1 for var in clause if assignment[var - 1]) != 1:
            raise ReductionError(f"clause {l} does not have exactly one true variable")
    n = phi.num_vars
    return Solution.of(i if assignment[i - 1] else n + i for i in range(1, n + 1))


def is_bipartite_certificate(out: ReductionOutput) -> bool:
    return nx.is_bipartite(out.instance.graph.to_networkx())
