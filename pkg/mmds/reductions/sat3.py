"""
3-SAT to MMDS on graphs with a vertex cover of size (n + 1)(k + 1).

Per variable x_i: adjacent literal vertices v_x and v_~x, k + 1 vertices
a adjacent to both literals, and k - 1 hubs b adjacent to both literals,
each hub carrying k + 1 pendants. Per clause a vertex v_C adjacent to its
literal vertices and to Y; Y is adjacent to hubs u_1..u_k, each with k + 1
pendants.

Numbering: variable blocks in order (v_x, v_~x, a's, b's, pendants grouped
by hub), then clause vertices, Y, the u's and their pendants.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence

from ..exceptions import ReductionError
from ..models import CnfFormula, Instance, Solution
from .base import GraphBuilder, ReductionOutput

logger = logging.getLogger(__name__)


@dataclass
class VariableGadget:
    pos: int
    neg: int
    a: List[int]
    b: List[int]
    pendants: List[List[int]]


@dataclass
class Sat3Layout:
    phi: CnfFormula
    k: int
    variables: List[VariableGadget]
    clauses: List[int]
    y: int
    u: List[int]
    u_pendants: List[List[int]]

    def literal_vertex(self, lit: int) -> int:
        gadget = self.variables[abs(lit) - 1]
        return gadget.pos if lit > 0 else gadget.neg


def sat3_vertex_count(n: int, m: int, k: int) -> int:
    per_variable = 2 + (k + 1) + (k - 1) + (k - 1) * (k + 1)
    return n * per_variable + m + 1 + k + k * (k + 1)


def reduce_sat3(phi: CnfFormula, k: int) -> ReductionOutput:
    if k < 2:
        raise ReductionError(f"k must be at least 2, got {k}")
    for l, clause in enumerate(phi.clauses, start=1):
        if len(clause) > 3:
            raise ReductionError(f"clause {l} has {len(clause)} literals, at most 3 allowed")

    b = GraphBuilder()
    variables = []
    for i in range(1, phi.num_vars + 1):
        pos = b.vertex(f"var x_{i} pos")
        neg = b.vertex(f"var x_{i} neg")
        a = b.vertices([f"var x_{i}/a_{j}" for j in range(1, k + 2)])
        hubs = b.vertices([f"var x_{i}/b_{j}" for j in range(1, k)])
        pendants = [
            b.vertices([f"var x_{i}/d_{j},{t}" for t in range(1, k + 2)]) for j in range(1, k)
        ]
        b.edge(pos, neg)
        for v in a + hubs:
            b.edge(v, pos)
            b.edge(v, neg)
        for hub, ds in zip(hubs, pendants):
            for d in ds:
                b.edge(hub, d)
        variables.append(VariableGadget(pos=pos, neg=neg, a=a, b=hubs, pendants=pendants))

    clauses = b.vertices([f"clause C_{l}" for l in range(1, phi.num_clauses + 1)])
    y = b.vertex("Y")
    u = b.vertices([f"u_{q}" for q in range(1, k + 1)])
    u_pendants = [b.vertices([f"u_{q}/r_{p}" for p in range(1, k + 2)]) for q in range(1, k + 1)]
    for u_q, rs in zip(u, u_pendants):
        b.edge(y, u_q)
        for r in rs:
            b.edge(u_q, r)

    layout = Sat3Layout(phi=phi, k=k, variables=variables, clauses=clauses, y=y, u=u,
                        u_pendants=u_pendants)
    for c, clause in zip(clauses, phi.clauses):
        b.edge(c, y)
        for lit in clause:
            b.edge(c, layout.literal_vertex(lit))

    graph = b.graph()
    cover = frozenset(
        [v for gadget in variables for v in (gadget.pos, gadget.neg, *gadget.b)] + [y] + u
    )
    logger.info(
        f"3-SAT reduction: {phi.num_vars} variables, {phi.num_clauses} clauses, k={k} "
        f"-> {graph.n} vertices, vertex cover {len(cover)}"
    )
    return ReductionOutput(
        instance=Instance(graph, k),
        vertex_labels=b.labels,
        source_ref=f"CNF with {phi.num_vars} variables and {phi.num_clauses} clauses, k={k}",
        vertex_cover=cover,
        layout=layout,
    )


def sat3_witness(out: ReductionOutput, assignment: Sequence[bool]) -> Solution:
    """
    True literal vertices, every b hub and every u hub. A clause vertex ends
    with one member per distinct true literal, so more than k of them is
    refused.
    """
    layout: Sat3Layout = out.layout
    phi = layout.phi
    if len(assignment) != phi.num_vars:
        raise ReductionError(f"assignment has {len(assignment)} values, expected {phi.num_vars}")

    def true(lit: int) -> bool:
        return assignment[abs(lit) - 1] == (lit > 0)

    for l, clause in enumerate(phi.clauses, start=1):
        hits = {lit for lit in clause if true(lit)}
        if not hits:
            raise ReductionError(f"assignment does not satisfy clause {l}")
        if len(hits) > layout.k:
            raise ReductionError(f"clause {l} has {len(hits)} true literals, more than k={layout.k}")

    chosen = set(layout.u)
    for i, gadget in enumerate(layout.variables):
        chosen.add(gadget.pos if assignment[i] else gadget.neg)
        chosen.update(gadget.b)
    return Solution.of(chosen, out.instance.graph.n)
