"""
Shared plumbing for the instance generators: a labelled graph builder and
the ReductionOutput record.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

from ..exceptions import ReductionError
from ..models import Graph, Instance, Solution
from ..services.decomposition import TreeDecomposition


class GraphBuilder:
    """Hands out vertex ids 1, 2, ... in creation order, each with a unique label"""

    def __init__(self):
        self.labels: Dict[int, str] = {}
        self._by_label: Dict[str, int] = {}
        self._edges: Set[Tuple[int, int]] = set()

    @property
    def n(self) -> int:
        return len(self.labels)

    def vertex(self, label: str) -> int:
        if label in self._by_label:
            raise ReductionError(f"duplicate vertex label {label!r}")
        v = len(self.labels) + 1
        self.labels[v] = label
        self._by_label[label] = v
        return v

    def vertices(self, labels: List[str]) -> List[int]:
        return [self.vertex(label) for label in labels]

    def edge(self, u: int, v: int) -> None:
        """Repeated edges collapse into one"""
        if u == v:
            raise ReductionError(f"self-loop at {self.labels[u]}")
        self._edges.add((min(u, v), max(u, v)))

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, sorted(self._edges))


@dataclass
class ReductionOutput:
    instance: Instance
    vertex_labels: Dict[int, str]
    source_ref: str
    witness: Optional[Solution] = None
    decomposition: Optional[TreeDecomposition] = None
    vertex_cover: Optional[FrozenSet[int]] = None
    layout: Any = field(default=None, repr=False)

    def vertex(self, label: str) -> int:
        for v, name in self.vertex_labels.items():
            if name == label:
                return v
        raise KeyError(label)

    def labels_text(self) -> str:
        return "".join(f"{v}\t{self.vertex_labels[v]}\n" for v in sorted(self.vertex_labels))
