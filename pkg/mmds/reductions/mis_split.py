"""
Multi-Colored Independent Set to MMDS on split graphs, k unchanged.

The clique side is V plus a hub w. The independent side holds k + 1
private vertices U_i per color class, each adjacent to all of V_i, and one
vertex x_uv per edge uv between two classes, adjacent to w and to every
vertex of the two classes except u and v.

Numbering: source vertices keep their ids, then w, then U_1..U_k, then the
x_uv in cross-edge order.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..exceptions import ReductionError
from ..models import ColoredGraph, Instance, Solution
from .base import GraphBuilder, ReductionOutput

logger = logging.getLogger(__name__)


@dataclass
class MisSplitLayout:
    source: ColoredGraph
    w: int
    u_sets: List[List[int]]
    edge_vertices: Dict[Tuple[int, int], int]

    @property
    def clique(self) -> List[int]:
        return list(self.source.graph.vertices) + [self.w]

    @property
    def independent(self) -> List[int]:
        return [u for us in self.u_sets for u in us] + list(self.edge_vertices.values())


def mis_split_vertex_count(n: int, k: int, cross_edges: int) -> int:
    return n + 1 + k * (k + 1) + cross_edges


def reduce_mis_split(g: ColoredGraph, k: int) -> ReductionOutput:
    """
    Edges inside one color class are ignored; they never matter for a
    choice of one vertex per class.
    """
    if g.k != k:
        raise ReductionError(f"graph has {g.k} color classes, expected k={k}")
    classes = g.classes()
    b = GraphBuilder()
    for v in g.graph.vertices:
        b.vertex(f"V_{g.color[v]}/v_{v}")
    w = b.vertex("w")
    u_sets = [b.vertices([f"U_{i}/u_{t}" for t in range(1, k + 2)]) for i in range(1, k + 1)]
    cross = g.cross_edges()
    edge_vertices = {(u, v): b.vertex(f"D/x_{u},{v}") for u, v in cross}

    for u, v in itertools.combinations(range(1, w + 1), 2):
        b.edge(u, v)
    for members, us in zip(classes, u_sets):
        for v in members:
            for u in us:
                b.edge(v, u)
    for (u, v), x in edge_vertices.items():
        b.edge(x, w)
        for y in classes[g.color[u] - 1] + classes[g.color[v] - 1]:
            if y != u and y != v:
                b.edge(x, y)

    graph = b.graph()
    logger.info(f"Split reduction: k={k}, {g.graph.n} vertices, {len(cross)} cross edges -> {graph.n} vertices")
    return ReductionOutput(
        instance=Instance(graph, k),
        vertex_labels=b.labels,
        source_ref=f"multi-colored independent set instance, k={k}, n={g.graph.n}",
        layout=MisSplitLayout(source=g, w=w, u_sets=u_sets, edge_vertices=edge_vertices),
    )


def mis_witness(out: ReductionOutput, chosen: Sequence[int]) -> Solution:
    """The independent set itself: one vertex per class, pairwise non-adjacent"""
    layout: MisSplitLayout = out.layout
    g = layout.source
    if len(chosen) != g.k:
        raise ReductionError(f"expected {g.k} vertices, got {len(chosen)}")
    for v in chosen:
        g.graph.check_vertex(v)
    colors = sorted(g.color[v] for v in chosen)
    if colors != list(range(1, g.k + 1)):
        raise ReductionError(f"vertices do not take one per color class: colors {colors}")
    for u, v in itertools.combinations(chosen, 2):
        if g.graph.has_edge(u, v):
            raise ReductionError(f"vertices {u} and {v} are adjacent")
    return Solution.of(chosen, out.instance.graph.n)


def is_split_certificate(out: ReductionOutput) -> bool:
    """Clique side pairwise adjacent and independent side edgeless"""
    layout: MisSplitLayout = out.layout
    g = out.instance.graph
    clique_ok = all(g.has_edge(u, v) for u, v in itertools.combinations(layout.clique, 2))
    independent_ok = not any(
        g.has_edge(u, v) for u, v in itertools.combinations(layout.independent, 2)
    )
    return clique_ok and independent_ok
