"""
Multi-Colored Clique to MMDS with k' = n + 1, where every color class has
n vertices.

Building blocks
  D(u, v)  heads u, v (adjacent) plus n + 2 independent vertices adjacent
           to both heads.
  I        heads h1 - h2, sets A = a_1..a_n (each a_t - h2) and
           D = d_1..d_n (each d_t - h1), wired by D(a_t, d_t), D(a_t, h1)
           and D(d_t, h2).
  block    gadgets plus f, f', c_1..c_{n+1}, b_1..b_{(n+1)(n+2)}: every a_t
           of every gadget - f, f - f', f' - c_p, and c_p - b_q for
           (p-1)(n+2) < q <= p(n+2).

H has a vertex block H_i (one gadget per vertex of V_i) per color, and an
edge block H_{i,j} (one gadget per edge between V_i and V_j) per color pair.
Four connector vertices per pair tie the blocks together by thresholds on
the vertex position inside its class.

Numbering: blocks in order H_1..H_k, H_{1,2}, H_{1,3}, ...; inside a block
its gadgets, then f, f', the c's, the b's; inside a gadget h1, h2, the a's,
the d's, then independents of all D(a_t, d_t), all D(a_t, h1), all
D(d_t, h2). Connectors come last.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

from ..exceptions import ReductionError
from ..models import ColoredGraph, Instance, Solution
from ..services.decomposition import TreeDecomposition, path_decomposition
from .base import GraphBuilder, ReductionOutput

logger = logging.getLogger(__name__)


@dataclass
class GadgetI:
    h1: int
    h2: int
    a: List[int]
    d: List[int]
    ad: List[List[int]]  # independents of D(a_t, d_t)
    ah: List[List[int]]  # independents of D(a_t, h1)
    dh: List[List[int]]  # independents of D(d_t, h2)


@dataclass
class Block:
    name: str
    gadgets: List[GadgetI]
    f: int
    f_prime: int
    c: List[int]
    b: List[int]


@dataclass
class MccLayout:
    source: ColoredGraph
    n: int
    classes: List[List[int]]
    vertex_blocks: List[Block]
    edge_blocks: Dict[Tuple[int, int], Block]
    edge_gadgets: Dict[Tuple[int, int], List[Tuple[int, int]]]
    # (i, j, owner color) -> (s, r)
    connectors: Dict[Tuple[int, int, int], Tuple[int, int]] = field(default_factory=dict)

    def connector_vertices(self) -> List[int]:
        return sorted(v for pair in self.connectors.values() for v in pair)


def gadget_size(n: int) -> int:
    return 3 * n * n + 8 * n + 2


def block_extra_size(n: int) -> int:
    return (n + 1) * (n + 3) + 2


def mcc_census(k: int, n: int, edge_counts: Sequence[int]) -> int:
    """|V(H)| for k classes of size n and the given per-pair edge counts"""
    vertex_side = k * (n * gadget_size(n) + block_extra_size(n))
    edge_side = sum(m * gadget_size(n) + block_extra_size(n) for m in edge_counts)
    return vertex_side + edge_side + 4 * (k * (k - 1) // 2)


def _type_d(b: GraphBuilder, u: int, v: int, n: int, prefix: str) -> List[int]:
    b.edge(u, v)
    independents = b.vertices([f"{prefix}/e_{t}" for t in range(1, n + 3)])
    for e in independents:
        b.edge(u, e)
        b.edge(v, e)
    return independents


def add_type_i_gadget(b: GraphBuilder, n: int, prefix: str) -> GadgetI:
    h1 = b.vertex(f"{prefix}/h1")
    h2 = b.vertex(f"{prefix}/h2")
    a = b.vertices([f"{prefix}/a_{t}" for t in range(1, n + 1)])
    d = b.vertices([f"{prefix}/d_{t}" for t in range(1, n + 1)])
    b.edge(h1, h2)
    for t in range(n):
        b.edge(a[t], h2)
        b.edge(d[t], h1)
    ad = [_type_d(b, a[t], d[t], n, f"{prefix}/D(a_{t + 1},d_{t + 1})") for t in range(n)]
    ah = [_type_d(b, a[t], h1, n, f"{prefix}/D(a_{t + 1},h1)") for t in range(n)]
    dh = [_type_d(b, d[t], h2, n, f"{prefix}/D(d_{t + 1},h2)") for t in range(n)]
    return GadgetI(h1=h1, h2=h2, a=a, d=d, ad=ad, ah=ah, dh=dh)


def add_block(b: GraphBuilder, n: int, name: str, gadget_names: Sequence[str]) -> Block:
    gadgets = [add_type_i_gadget(b, n, f"{name}/{g}") for g in gadget_names]
    f = b.vertex(f"{name}/f")
    f_prime = b.vertex(f"{name}/f'")
    c = b.vertices([f"{name}/c_{p}" for p in range(1, n + 2)])
    bs = b.vertices([f"{name}/b_{q}" for q in range(1, (n + 1) * (n + 2) + 1)])
    for gadget in gadgets:
        for a_t in gadget.a:
            b.edge(a_t, f)
    b.edge(f, f_prime)
    for p, c_p in enumerate(c):
        b.edge(f_prime, c_p)
        for q in range(p * (n + 2), (p + 1) * (n + 2)):
            b.edge(c_p, bs[q])
    return Block(name=name, gadgets=gadgets, f=f, f_prime=f_prime, c=c, b=bs)


def reduce_mcc(g: ColoredGraph) -> ReductionOutput:
    classes = g.classes()
    sizes = {len(cls_) for cls_ in classes}
    if len(sizes) != 1:
        raise ReductionError(f"color classes must have equal size, got sizes {sorted(sizes)}")
    n = sizes.pop()
    k = g.k
    position = {v: l for cls_ in classes for l, v in enumerate(cls_, start=1)}

    pairs = list(itertools.combinations(range(1, k + 1), 2))
    edge_gadgets: Dict[Tuple[int, int], List[Tuple[int, int]]] = {pair: [] for pair in pairs}
    for u, v in g.cross_edges():
        edge_gadgets[(g.color[u], g.color[v])].append((u, v))

    b = GraphBuilder()
    vertex_blocks = [
        add_block(b, n, f"H{i}", [f"I{l}" for l in range(1, n + 1)]) for i in range(1, k + 1)
    ]
    edge_blocks = {
        (i, j): add_block(b, n, f"H{i},{j}", [f"I[{u}-{v}]" for u, v in edge_gadgets[(i, j)]])
        for i, j in pairs
    }
    connectors = {}
    for i, j in pairs:
        for owner in (i, j):
            s = b.vertex(f"connector s^{owner}_{i},{j}")
            r = b.vertex(f"connector r^{owner}_{i},{j}")
            connectors[(i, j, owner)] = (s, r)

    # vertex side: gadget I_l of H_i, a_t - s for t <= l, a_t - r for t >= l
    for i, block in enumerate(vertex_blocks, start=1):
        for j in range(1, k + 1):
            if j == i:
                continue
            s, r = connectors[(min(i, j), max(i, j), i)]
            for l, gadget in enumerate(block.gadgets, start=1):
                for t, a_t in enumerate(gadget.a, start=1):
                    if t <= l:
                        b.edge(a_t, s)
                    if t >= l:
                        b.edge(a_t, r)

    # edge side, thresholds reversed: e = u_{i,x} u_{j,y}
    for (i, j), block in edge_blocks.items():
        s_i, r_i = connectors[(i, j, i)]
        s_j, r_j = connectors[(i, j, j)]
        for (u, v), gadget in zip(edge_gadgets[(i, j)], block.gadgets):
            x, y = position[u], position[v]
            for t, a_t in enumerate(gadget.a, start=1):
                if t <= x:
                    b.edge(a_t, r_i)
                if t >= x:
                    b.edge(a_t, s_i)
                if t <= y:
                    b.edge(a_t, r_j)
                if t >= y:
                    b.edge(a_t, s_j)

    graph = b.graph()
    layout = MccLayout(
        source=g, n=n, classes=classes, vertex_blocks=vertex_blocks,
        edge_blocks=edge_blocks, edge_gadgets=edge_gadgets, connectors=connectors,
    )
    logger.info(
        f"Clique reduction: k={k}, n={n}, {sum(len(e) for e in edge_gadgets.values())} cross edges "
        f"-> {graph.n} vertices, {graph.m} edges, k'={n + 1}"
    )
    out = ReductionOutput(
        instance=Instance(graph, n + 1),
        vertex_labels=b.labels,
        source_ref=f"multi-colored clique instance, k={k}, n={n}",
        layout=layout,
    )
    out.decomposition = mcc_path_decomposition(out)
    return out


def _select(gadget: GadgetI, chosen: bool) -> List[int]:
    """A + h2 for the selected gadget of a block, D + h1 for the others"""
    return gadget.a + [gadget.h2] if chosen else gadget.d + [gadget.h1]


def mcc_witness(out: ReductionOutput, clique: Sequence[int]) -> Solution:
    """
    Dominating set of H with membership n + 1 from a multicolored clique,
    given as one vertex per color (clique[i-1] in V_i).
    """
    layout: MccLayout = out.layout
    g = layout.source
    k = g.k
    if len(clique) != k:
        raise ReductionError(f"expected {k} clique vertices, got {len(clique)}")
    for i, v in enumerate(clique, start=1):
        g.graph.check_vertex(v)
        if g.color[v] != i:
            raise ReductionError(f"vertex {v} does not have color {i}")
    for u, v in itertools.combinations(clique, 2):
        if not g.graph.has_edge(u, v):
            raise ReductionError(f"vertices {u} and {v} are not adjacent, input is not a clique")

    chosen = set()
    for i, block in enumerate(layout.vertex_blocks, start=1):
        x = layout.classes[i - 1].index(clique[i - 1])
        for l, gadget in enumerate(block.gadgets):
            chosen.update(_select(gadget, l == x))
        chosen.update(block.c)
    for (i, j), block in layout.edge_blocks.items():
        picked = (clique[i - 1], clique[j - 1])
        for e, gadget in zip(layout.edge_gadgets[(i, j)], block.gadgets):
            chosen.update(_select(gadget, e == picked))
        chosen.update(block.c)
    return Solution.of(chosen, out.instance.graph.n)


def gadget_bags(gadget: GadgetI) -> List[FrozenSet[int]]:
    """Path bags of one type I gadget, width 4"""
    bags = []
    heads = {gadget.h1, gadget.h2}
    for t in range(len(gadget.a)):
        a_t, d_t = gadget.a[t], gadget.d[t]
        bags.extend(frozenset({a_t, e} | heads) for e in gadget.ah[t])
        bags.extend(frozenset({a_t, d_t, e} | heads) for e in gadget.ad[t])
        bags.extend(frozenset({d_t, e} | heads) for e in gadget.dh[t])
    return bags


def block_bags(block: Block) -> List[FrozenSet[int]]:
    """Gadget bags, then {f', c_p, b_q} bags, with f added everywhere; width 5"""
    n_plus_2 = len(block.b) // len(block.c)
    bags = [bag for gadget in block.gadgets for bag in gadget_bags(gadget)]
    for p, c_p in enumerate(block.c):
        for b_q in block.b[p * n_plus_2:(p + 1) * n_plus_2]:
            bags.append(frozenset({block.f_prime, c_p, b_q}))
    return [bag | {block.f} for bag in bags]


def mcc_path_decomposition(out: ReductionOutput) -> TreeDecomposition:
    """Block bags concatenated in numbering order, every connector in every bag"""
    layout: MccLayout = out.layout
    connectors = frozenset(layout.connector_vertices())
    bags = []
    for block in layout.vertex_blocks + list(layout.edge_blocks.values()):
        bags.extend(bag | connectors for bag in block_bags(block))
    return path_decomposition(bags, out.instance.graph.n)


def width_bound(k: int) -> int:
    return 4 * (k * (k - 1) // 2) + 5
