"""
Core data types: graphs, instances, solutions, colored graphs, CNF formulas
and interval sets. All types are immutable after construction.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple
import enum

import networkx as nx

from .exceptions import GraphError, VertexOutOfRange


Edge = Tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n"""
    n: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        seen = set()
        adj: List[List[int]] = [[] for _ in range(n + 1)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise VertexOutOfRange(x, n)
            e = _normalize_edge(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e[0]} {e[1]}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(tuple(sorted(a)) for a in adj)
        return cls(n=n, edges=frozenset(seen), adjacency=adjacency)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise VertexOutOfRange(v, self.n)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        self.check_vertex(v)
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> FrozenSet[int]:
        return frozenset(self.neighbors(v)) | {v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency[1:]), default=0)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.sorted_edges())
        return g

    @classmethod
    def from_networkx(cls, h: nx.Graph) -> "Graph":
        """Nodes renumbered 1..n in sorted node order"""
        index = {node: i for i, node in enumerate(sorted(h.nodes), start=1)}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in h.edges))


def closed_neighborhood(g: Graph, v: int) -> FrozenSet[int]:
    """N[v] = N(v) + {v}"""
    return g.closed_neighborhood(v)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise GraphError(f"membership bound k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Solution:
    members: FrozenSet[int]

    @classmethod
    def of(cls, members: Iterable[int], n: Optional[int] = None) -> "Solution":
        chosen = frozenset(members)
        if n is not None:
            for v in chosen:
                if not 1 <= v <= n:
                    raise VertexOutOfRange(v, n)
        return cls(members=chosen)

    def sorted(self) -> List[int]:
        return sorted(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


class VerdictKind(enum.Enum):
    FEASIBLE = "Feasible"
    NOT_DOMINATING = "NotDominating"
    MEMBERSHIP_EXCEEDED = "MembershipExceeded"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    vertex: Optional[int] = None
    value: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.kind is VerdictKind.FEASIBLE

    def __str__(self) -> str:
        if self.kind is VerdictKind.FEASIBLE:
            return self.kind.value
        if self.kind is VerdictKind.NOT_DOMINATING:
            return f"{self.kind.value} {self.vertex}"
        return f"{self.kind.value} {self.vertex} {self.value}"


@dataclass(frozen=True)
class ColoredGraph:
    """Graph with a vertex partition V_1..V_k given by colors 1..k"""
    graph: Graph
    color: Tuple[int, ...]  # color[v] for v in 1..n, index 0 unused
    k: int

    @classmethod
    def from_colors(cls, graph: Graph, colors: Dict[int, int]) -> "ColoredGraph":
        missing = [v for v in graph.vertices if v not in colors]
        if missing:
            raise GraphError(f"vertex {missing[0]} has no color")
        k = max(colors.values(), default=0)
        used = set(colors.values())
        for c in range(1, k + 1):
            if c not in used:
                raise GraphError(f"color class {c} is empty")
        for v, c in colors.items():
            graph.check_vertex(v)
            if c < 1:
                raise GraphError(f"vertex {v} has invalid color {c}")
        color = (0,) + tuple(colors[v] for v in graph.vertices)
        return cls(graph=graph, color=color, k=k)

    def color_class(self, c: int) -> List[int]:
        """Vertices of color c in increasing id order"""
        return [v for v in self.graph.vertices if self.color[v] == c]

    def classes(self) -> List[List[int]]:
        return [self.color_class(c) for c in range(1, self.k + 1)]

    def cross_edges(self) -> List[Edge]:
        """Edges whose endpoints have different colors, oriented lower color first"""
        out = []
        for u, v in self.graph.sorted_edges():
            cu, cv = self.color[u], self.color[v]
            if cu == cv:
                continue
            out.append((u, v) if cu < cv else (v, u))
        return sorted(out, key=lambda e: (self.color[e[0]], self.color[e[1]], e))


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]
    positive_only: bool

    @classmethod
    def from_clauses(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        frozen = tuple(tuple(c) for c in clauses)
        for clause in frozen:
            for lit in clause:
                if lit == 0 or abs(lit) > num_vars:
                    raise GraphError(f"literal {lit} out of range for {num_vars} variables")
        positive = all(lit > 0 for clause in frozen for lit in clause)
        return cls(num_vars=num_vars, clauses=frozen, positive_only=positive)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class IntervalSet:
    intervals: Tuple[Tuple[int, int, int], ...]  # (id, left, right)

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[int, int, int]]) -> "IntervalSet":
        frozen = tuple((int(i), int(l), int(r)) for i, l, r in triples)
        seen = set()
        for ident, left, right in frozen:
            if left > right:
                raise GraphError(f"interval {ident} has left {left} > right {right}")
            if ident in seen:
                raise GraphError(f"duplicate interval id {ident}")
            seen.add(ident)
        return cls(intervals=frozen)

    def __len__(self) -> int:
        return len(self.intervals)

    def ids_of(self, s: Solution) -> List[int]:
        """Interval ids of a solution given in vertex numbering (1..n, input order)"""
        return [self.intervals[v - 1][0] for v in s.sorted()]
