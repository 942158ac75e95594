"""
Tree decompositions: min-fill construction, validation, nice form and the
PACE .td text format.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple
import enum

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from ..exceptions import InvalidDecomposition, ParseError
from ..formats import TextLike, _int, _lines
from ..models import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeDecomposition:
    bags: Dict[int, FrozenSet[int]]
    tree_edges: Tuple[Tuple[int, int], ...]
    n: Optional[int] = None  # vertex count declared by a parsed .td header

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def tree(self) -> nx.Graph:
        t = nx.Graph()
        t.add_nodes_from(sorted(self.bags))
        t.add_edges_from(self.tree_edges)
        return t


class ViolationKind(enum.Enum):
    VALID = "VALID"
    NOT_A_TREE = "NOT_A_TREE"
    UNKNOWN_VERTEX = "UNKNOWN_VERTEX"
    UNCOVERED_VERTEX = "UNCOVERED_VERTEX"
    UNCOVERED_EDGE = "UNCOVERED_EDGE"
    DISCONNECTED_OCCURRENCE = "DISCONNECTED_OCCURRENCE"
    NOT_A_PATH = "NOT_A_PATH"
    VERTEX_COUNT_MISMATCH = "VERTEX_COUNT_MISMATCH"


@dataclass(frozen=True)
class DecompositionVerdict:
    kind: ViolationKind
    witness: Tuple[int, ...] = ()
    width: Optional[int] = None

    @property
    def valid(self) -> bool:
        return self.kind is ViolationKind.VALID

    def __str__(self) -> str:
        if self.valid:
            return f"VALID width {self.width}"
        return " ".join([self.kind.value, *map(str, self.witness)])


def build_tree_decomposition(g: Graph) -> TreeDecomposition:
    """
    Min-fill elimination heuristic. Vertices are handed to networkx in
    increasing id order, so fill-in ties go to the lowest id.
    """
    width, decomp = treewidth_min_fill_in(g.to_networkx())
    ids = {}
    bags = {}
    # networkx returns frozenset nodes in insertion order, which is deterministic
    for i, bag in enumerate(decomp.nodes, start=1):
        ids[bag] = i
        bags[i] = frozenset(bag)
    edges = tuple(sorted((min(ids[a], ids[b]), max(ids[a], ids[b])) for a, b in decomp.edges))
    logger.debug(f"Min-fill decomposition: {len(bags)} bags, width {width}")
    return TreeDecomposition(bags=bags, tree_edges=edges, n=g.n)


def _tree_verdict(td: TreeDecomposition) -> Optional[DecompositionVerdict]:
    known = set(td.bags)
    seen = set()
    for a, b in td.tree_edges:
        key = (min(a, b), max(a, b))
        if a == b or a not in known or b not in known or key in seen:
            return DecompositionVerdict(ViolationKind.NOT_A_TREE, (a, b))
        seen.add(key)
    if not nx.is_tree(td.tree()):
        return DecompositionVerdict(ViolationKind.NOT_A_TREE)
    return None


def validate_decomposition(g: Graph, td: TreeDecomposition, path_only: bool = False) -> DecompositionVerdict:
    """Checks vertex coverage, edge coverage and connected occurrence sets, in that order"""
    if td.n is not None and td.n != g.n:
        return DecompositionVerdict(ViolationKind.VERTEX_COUNT_MISMATCH, (td.n, g.n))
    if not td.bags:
        if g.n == 0:
            return DecompositionVerdict(ViolationKind.VALID, width=-1)
        return DecompositionVerdict(ViolationKind.UNCOVERED_VERTEX, (1,))

    broken = _tree_verdict(td)
    if broken is not None:
        return broken

    occurrences: Dict[int, List[int]] = {v: [] for v in g.vertices}
    for node in sorted(td.bags):
        for v in sorted(td.bags[node]):
            if v not in occurrences:
                return DecompositionVerdict(ViolationKind.UNKNOWN_VERTEX, (v,))
            occurrences[v].append(node)

    for v in g.vertices:
        if not occurrences[v]:
            return DecompositionVerdict(ViolationKind.UNCOVERED_VERTEX, (v,))

    for u, v in g.sorted_edges():
        nodes_u = set(occurrences[u])
        if not any(node in nodes_u for node in occurrences[v]):
            return DecompositionVerdict(ViolationKind.UNCOVERED_EDGE, (u, v))

    tree = td.tree()
    for v in g.vertices:
        if not nx.is_connected(tree.subgraph(occurrences[v])):
            return DecompositionVerdict(ViolationKind.DISCONNECTED_OCCURRENCE, (v,))

    if path_only and any(d > 2 for _, d in tree.degree()):
        return DecompositionVerdict(ViolationKind.NOT_A_PATH)

    return DecompositionVerdict(ViolationKind.VALID, width=td.width)


def path_decomposition(bags: List[FrozenSet[int]], n: Optional[int] = None) -> TreeDecomposition:
    """Bags chained 1-2-3-... in list order"""
    numbered = {i: frozenset(b) for i, b in enumerate(bags, start=1)}
    edges = tuple((i, i + 1) for i in range(1, len(bags)))
    return TreeDecomposition(bags=numbered, tree_edges=edges, n=n)


# Nice decompositions


class NodeKind(enum.Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: Tuple[int, ...]  # sorted
    vertex: Optional[int] = None
    children: Tuple[int, ...] = ()


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes are stored in post-order: every child precedes its parent, the root is last"""
    nodes: Tuple[NiceNode, ...] = field(default_factory=tuple)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(node.bag) for node in self.nodes), default=0) - 1

    def count(self, kind: NodeKind) -> int:
        return sum(1 for node in self.nodes if node.kind is kind)

    def as_decomposition(self) -> TreeDecomposition:
        bags = {i + 1: frozenset(node.bag) for i, node in enumerate(self.nodes)}
        edges = tuple(sorted((c + 1, i + 1) for i, node in enumerate(self.nodes) for c in node.children))
        return TreeDecomposition(bags=bags, tree_edges=edges)


def _rooted_children(td: TreeDecomposition, root: int) -> Dict[int, List[int]]:
    adjacency: Dict[int, List[int]] = {node: [] for node in td.bags}
    for a, b in td.tree_edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    children: Dict[int, List[int]] = {node: [] for node in td.bags}
    visited = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for nxt in sorted(adjacency[node]):
            if nxt not in visited:
                visited.add(nxt)
                children[node].append(nxt)
                queue.append(nxt)
    return children


def make_nice(td: TreeDecomposition, root: Optional[int] = None) -> NiceTreeDecomposition:
    """
    Rooted nice form with an empty root bag and empty leaf bags. Each child
    bag is adapted to its parent by forgetting, then introducing, vertices in
    increasing id order; a node with m > 1 children becomes a left-deep chain
    of m - 1 join nodes.
    """
    if not td.bags:
        return NiceTreeDecomposition(nodes=(NiceNode(NodeKind.LEAF, ()),))
    broken = _tree_verdict(td)
    if broken is not None:
        raise InvalidDecomposition(broken)

    root = min(td.bags) if root is None else root
    children = _rooted_children(td, root)
    nodes: List[NiceNode] = []

    def add(kind: NodeKind, bag, vertex=None, kids=()) -> int:
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(kids)))
        return len(nodes) - 1

    # iterative post-order, deep decompositions would hit the recursion limit
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(children[node])
    order.reverse()

    top: Dict[int, int] = {}
    for node in order:
        target = td.bags[node]
        branches = []
        for child in children[node]:
            idx = top.pop(child)
            bag = set(td.bags[child])
            for v in sorted(bag - target):
                bag.discard(v)
                idx = add(NodeKind.FORGET, bag, v, (idx,))
            for v in sorted(target - bag):
                bag.add(v)
                idx = add(NodeKind.INTRODUCE, bag, v, (idx,))
            branches.append(idx)
        if not branches:
            idx = add(NodeKind.LEAF, ())
            bag = set()
            for v in sorted(target):
                bag.add(v)
                idx = add(NodeKind.INTRODUCE, bag, v, (idx,))
            branches.append(idx)
        idx = branches[0]
        for other in branches[1:]:
            idx = add(NodeKind.JOIN, target, None, (idx, other))
        top[node] = idx

    idx = top[root]
    bag = set(td.bags[root])
    for v in sorted(td.bags[root]):
        bag.discard(v)
        idx = add(NodeKind.FORGET, bag, v, (idx,))

    nice = NiceTreeDecomposition(nodes=tuple(nodes))
    logger.debug(
        f"Nice decomposition: {len(nodes)} nodes from {len(td.bags)} bags, "
        f"{nice.count(NodeKind.JOIN)} joins, width {nice.width}"
    )
    return nice


def check_nice(g: Graph, ntd: NiceTreeDecomposition) -> None:
    """Raise InvalidDecomposition unless ntd is a nice decomposition of g"""
    if not ntd.nodes or ntd.nodes[ntd.root].bag:
        raise InvalidDecomposition("root bag is not empty")
    for i, node in enumerate(ntd.nodes):
        if any(c >= i for c in node.children):
            raise InvalidDecomposition(f"node {i} is not in post-order")
        bag = set(node.bag)
        if node.kind is NodeKind.LEAF:
            ok = not node.children and not bag
        elif node.kind is NodeKind.JOIN:
            ok = len(node.children) == 2 and all(set(ntd.nodes[c].bag) == bag for c in node.children)
        elif len(node.children) != 1:
            ok = False
        elif node.kind is NodeKind.INTRODUCE:
            ok = node.vertex in bag and set(ntd.nodes[node.children[0]].bag) == bag - {node.vertex}
        else:
            ok = node.vertex not in bag and set(ntd.nodes[node.children[0]].bag) == bag | {node.vertex}
        if not ok:
            raise InvalidDecomposition(f"node {i} violates the {node.kind.value} node shape")
    verdict = validate_decomposition(g, ntd.as_decomposition())
    if not verdict.valid:
        raise InvalidDecomposition(verdict)


# PACE .td format


def parse_td(text: TextLike) -> TreeDecomposition:
    header = None
    header_line = None
    bags: Dict[int, FrozenSet[int]] = {}
    edges: List[Tuple[int, int]] = []

    for line_no, tokens in _lines(text):
        if tokens[0] == "s":
            if header is not None:
                raise ParseError("duplicate header", line_no)
            if len(tokens) != 5 or tokens[1] != "td":
                raise ParseError("malformed header, expected 's td <bags> <max bag size> <n>'", line_no)
            header = tuple(_int(t, line_no, "header field") for t in tokens[2:])
            header_line = line_no
            continue
        if header is None:
            raise ParseError(f"'{tokens[0]}' line before header", line_no)
        num_bags, _, n = header
        if tokens[0] == "b":
            if len(tokens) < 2:
                raise ParseError("malformed bag line, expected 'b <id> <v...>'", line_no)
            ident = _int(tokens[1], line_no, "bag id")
            if not 1 <= ident <= num_bags:
                raise ParseError(f"bag id {ident} out of range 1..{num_bags}", line_no)
            if ident in bags:
                raise ParseError(f"bag {ident} defined twice", line_no)
            members = [_int(t, line_no, "vertex id") for t in tokens[2:]]
            for v in members:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex id {v} out of range 1..{n}", line_no)
            if len(set(members)) != len(members):
                raise ParseError(f"bag {ident} repeats a vertex", line_no)
            bags[ident] = frozenset(members)
        elif len(tokens) == 2:
            a = _int(tokens[0], line_no, "bag id")
            b = _int(tokens[1], line_no, "bag id")
            for x in (a, b):
                if not 1 <= x <= num_bags:
                    raise ParseError(f"bag id {x} out of range 1..{num_bags}", line_no)
            edges.append((a, b))
        else:
            raise ParseError(f"unrecognized line type '{tokens[0]}'", line_no)

    if header is None:
        raise ParseError("missing header 's td <bags> <max bag size> <n>'")
    num_bags, max_bag, n = header
    if len(bags) != num_bags:
        raise ParseError(f"header declares {num_bags} bags, found {len(bags)}", header_line)
    actual = max((len(b) for b in bags.values()), default=0)
    if actual != max_bag:
        raise ParseError(f"header declares max bag size {max_bag}, found {actual}", header_line)
    return TreeDecomposition(bags=bags, tree_edges=tuple(edges), n=n)


def serialize_td(td: TreeDecomposition, n: Optional[int] = None) -> str:
    n = td.n if n is None else n
    if n is None:
        n = max((max(b) for b in td.bags.values() if b), default=0)
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for ident in sorted(td.bags):
        lines.append(" ".join(["b", str(ident), *map(str, sorted(td.bags[ident]))]))
    lines.extend(f"{a} {b}" for a, b in td.tree_edges)
    return "\n".join(lines) + "\n"
