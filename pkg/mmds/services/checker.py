"""
Feasibility verification for MMDS solutions and the pendant forcing rules.
"""
import logging
from dataclasses import dataclass
from typing import FrozenSet, List

from ..models import Graph, Instance, Solution, Verdict, VerdictKind

logger = logging.getLogger(__name__)


def membership(g: Graph, s: Solution, v: int) -> int:
    """M(v, S) = |N[v] & S|"""
    g.check_vertex(v)
    count = 1 if v in s.members else 0
    return count + sum(1 for u in g.adjacency[v] if u in s.members)


def memberships(g: Graph, s: Solution) -> List[int]:
    """Membership of every vertex; index 0 unused"""
    _check_members(g, s)
    counts = [0] * (g.n + 1)
    for v in s.members:
        counts[v] += 1
        for u in g.adjacency[v]:
            counts[u] += 1
    return counts


def max_membership(g: Graph, s: Solution) -> int:
    return max(memberships(g, s)[1:], default=0)


def _check_members(g: Graph, s: Solution) -> None:
    for v in s.members:
        g.check_vertex(v)


def is_feasible(inst: Instance, s: Solution) -> Verdict:
    """
    Feasible iff every vertex has 1 <= M(v, S) <= k. Otherwise reports the
    lowest vertex violating either bound.
    """
    counts = memberships(inst.graph, s)
    for v in inst.graph.vertices:
        if counts[v] == 0:
            return Verdict(VerdictKind.NOT_DOMINATING, vertex=v)
        if counts[v] > inst.k:
            return Verdict(VerdictKind.MEMBERSHIP_EXCEEDED, vertex=v, value=counts[v])
    return Verdict(VerdictKind.FEASIBLE)


@dataclass(frozen=True)
class ForcingResult:
    forced_in: FrozenSet[int]
    forced_out: FrozenSet[int]
    conflict: bool

    @property
    def decided(self) -> int:
        return len(self.forced_in) + len(self.forced_out)


def forcing_preprocess(inst: Instance) -> ForcingResult:
    """
    Sound forcing rules, applied to fixpoint:

    R1  a vertex with more than k degree-1 neighbors is forced in, since
        otherwise each of those pendants must dominate itself;
    R2  every degree-1 neighbor of a forced-in vertex is forced out.

    A conflict means no solution exists: some vertex sees more than k
    forced-in vertices in its closed neighborhood, or a vertex is both
    forced in and forced out.
    """
    g, k = inst.graph, inst.k
    forced_in = set()
    forced_out = set()

    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in forced_in:
                continue
            pendants = [u for u in g.adjacency[v] if len(g.adjacency[u]) == 1]
            if len(pendants) > k:
                forced_in.add(v)
                changed = True
        for v in list(forced_in):
            for u in g.adjacency[v]:
                if len(g.adjacency[u]) == 1 and u not in forced_out:
                    forced_out.add(u)
                    changed = True

    conflict = bool(forced_in & forced_out)
    if not conflict:
        for v in g.vertices:
            hits = sum(1 for u in g.closed_neighborhood(v) if u in forced_in)
            if hits > k:
                logger.debug(f"Forcing conflict at vertex {v}: {hits} forced neighbors > k={k}")
                conflict = True
                break

    return ForcingResult(frozenset(forced_in), frozenset(forced_out), conflict)
