"""
Vertex-cover parameterized solver.

For a minimum vertex cover C every subset C1 of C is tried as the part of
the solution inside C. The independent side I = V - C then splits into
I1 (no neighbor in C1, must be in the solution), vertices with k or more
neighbors in C1 (can never be added), and Ie (may be added). Ie vertices
with the same neighborhood in C are interchangeable, so the remaining
choice is an integer count per neighborhood class, bounded by per-vertex
constraints on C. That grouped program is solved by branch and bound.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..exceptions import BudgetExceeded, InvalidCover
from ..models import Graph, Instance, Solution
from ..utils.parallel import first_hit

logger = logging.getLogger(__name__)


def _has_cover(edges: List[Tuple[int, int]], budget: int, chosen: List[int]) -> Optional[List[int]]:
    """Bounded search tree: some endpoint of the first uncovered edge is in the cover"""
    if not edges:
        return chosen
    if budget == 0:
        return None
    u, v = edges[0]
    for pick in (u, v):
        rest = [e for e in edges if pick not in e]
        found = _has_cover(rest, budget - 1, chosen + [pick])
        if found is not None:
            return found
    return None


def min_vertex_cover(g: Graph, limit: Optional[int] = None) -> FrozenSet[int]:
    """
    Minimum vertex cover by iterative deepening over the cover size.
    Isolated vertices never enter the search. Deterministic: edges are
    branched in sorted order, lower endpoint first.
    """
    limit = limit if limit is not None else settings.VC_BRANCH_LIMIT
    edges = g.sorted_edges()
    for size in range(0, limit + 1):
        found = _has_cover(edges, size, [])
        if found is not None:
            logger.debug(f"Minimum vertex cover of size {size}")
            return frozenset(found)
    raise BudgetExceeded("vertex cover size", limit + 1, limit)


@dataclass(frozen=True)
class CoverSplit:
    C: FrozenSet[int]
    I: FrozenSet[int]
    C1: FrozenSet[int]
    I1: FrozenSet[int]
    Ie: FrozenSet[int]

    @property
    def fixed(self) -> FrozenSet[int]:
        """Vertices in every solution extending C1: C1 and I1"""
        return self.C1 | self.I1


def split_cover(inst: Instance, C: FrozenSet[int], C1: FrozenSet[int]) -> CoverSplit:
    g, k = inst.graph, inst.k
    for v in C:
        g.check_vertex(v)
    uncovered = [e for e in g.sorted_edges() if e[0] not in C and e[1] not in C]
    if uncovered:
        u, v = uncovered[0]
        raise InvalidCover(f"not a vertex cover: edge {u} {v} is uncovered")
    if not C1 <= C:
        raise InvalidCover(f"C1 is not a subset of C: {sorted(C1 - C)}")

    I = frozenset(v for v in g.vertices if v not in C)
    I1 = frozenset(v for v in I if not any(u in C1 for u in g.adjacency[v]))
    Ie = frozenset(
        v for v in I - I1 if sum(1 for u in g.adjacency[v] if u in C1) < k
    )
    return CoverSplit(C=frozenset(C), I=I, C1=frozenset(C1), I1=I1, Ie=Ie)


@dataclass(frozen=True)
class CmmdsClass:
    signature: Tuple[int, ...]  # neighborhood in C
    members: Tuple[int, ...]   # sorted Ie vertices

    @property
    def population(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CmmdsConstraint:
    vertex: Optional[int]
    lower: int
    upper: int
    classes: Tuple[int, ...]  # indices into CmmdsProgram.classes


@dataclass(frozen=True)
class CmmdsProgram:
    """
    Integer program over one count variable per class, 0 <= x_j <= population_j,
    with lower <= sum of incident counts <= upper for every constraint.
    """
    classes: Tuple[CmmdsClass, ...]
    constraints: Tuple[CmmdsConstraint, ...]
    split: Optional[CoverSplit] = None
    lam: Dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_arrays(cls, populations: Sequence[int], matrix: Sequence[Sequence[int]],
                    lower: Sequence[int], upper: Sequence[int]) -> "CmmdsProgram":
        """Program without a graph behind it; matrix rows are 0/1 incidence per constraint"""
        classes = tuple(CmmdsClass(signature=(), members=tuple(range(p))) for p in populations)
        constraints = tuple(
            CmmdsConstraint(
                vertex=None,
                lower=int(lo),
                upper=int(hi),
                classes=tuple(j for j, a in enumerate(row) if a),
            )
            for row, lo, hi in zip(matrix, lower, upper)
        )
        return cls(classes=classes, constraints=constraints)

    @property
    def populations(self) -> np.ndarray:
        return np.array([c.population for c in self.classes], dtype=np.int64)

    def incidence(self) -> np.ndarray:
        a = np.zeros((len(self.constraints), len(self.classes)), dtype=np.int64)
        for i, con in enumerate(self.constraints):
            a[i, list(con.classes)] = 1
        return a

    def satisfied_by(self, x: Sequence[int]) -> bool:
        x = np.asarray(x, dtype=np.int64)
        if len(x) != len(self.classes) or (x < 0).any() or (x > self.populations).any():
            return False
        if not self.constraints:
            return True
        sums = self.incidence() @ x
        lower = np.array([c.lower for c in self.constraints])
        upper = np.array([c.upper for c in self.constraints])
        return bool(((sums >= lower) & (sums <= upper)).all())


def build_cmmds(inst: Instance, C: FrozenSet[int], C1: FrozenSet[int]) -> Optional[CmmdsProgram]:
    """
    The constrained subproblem for (G, k, C, C1), or None when it is
    infeasible before any Ie vertex is chosen: some vertex already has more
    than k closed neighbors in C1 + I1, or a cover vertex that nothing fixed
    dominates has no Ie neighbor.
    """
    g, k = inst.graph, inst.k
    split = split_cover(inst, frozenset(C), frozenset(C1))
    fixed = split.fixed

    for v in g.vertices:
        if sum(1 for u in g.closed_neighborhood(v) if u in fixed) > k:
            return None

    groups: Dict[Tuple[int, ...], List[int]] = {}
    for v in sorted(split.Ie):
        signature = tuple(sorted(u for u in g.adjacency[v] if u in split.C))
        groups.setdefault(signature, []).append(v)
    classes = tuple(CmmdsClass(signature=sig, members=tuple(members))
                    for sig, members in sorted(groups.items()))

    lam = {}
    constraints = []
    for v in sorted(split.C):
        lam[v] = sum(1 for u in g.closed_neighborhood(v) if u in fixed)
        incident = tuple(j for j, cls_ in enumerate(classes) if v in cls_.signature)
        if lam[v] == 0:
            if not incident:
                return None
            constraints.append(CmmdsConstraint(vertex=v, lower=1, upper=k, classes=incident))
        else:
            constraints.append(CmmdsConstraint(vertex=v, lower=0, upper=k - lam[v], classes=incident))

    return CmmdsProgram(classes=classes, constraints=tuple(constraints), split=split, lam=lam)


def solve_cmmds(p: CmmdsProgram) -> Optional[Tuple[int, ...]]:
    """
    Depth-first branch and bound over the class counts, values tried in
    increasing order, so the result is the lexicographically least solution.
    A partial assignment is cut when some constraint sum already exceeds its
    upper bound or cannot reach its lower bound with the unassigned classes.
    """
    num = len(p.classes)
    pops = [c.population for c in p.classes]
    touching: List[List[int]] = [[] for _ in range(num)]
    for i, con in enumerate(p.constraints):
        for j in con.classes:
            touching[j].append(i)

    lower = [c.lower for c in p.constraints]
    upper = [c.upper for c in p.constraints]
    sums = [0] * len(p.constraints)
    capacity = [sum(pops[j] for j in con.classes) for con in p.constraints]
    if any(cap < lo for cap, lo in zip(capacity, lower)) or any(hi < 0 for hi in upper):
        return None

    x = [0] * num

    def branch(j: int) -> bool:
        if j == num:
            return all(lo <= s <= hi for lo, s, hi in zip(lower, sums, upper))
        for i in touching[j]:
            capacity[i] -= pops[j]
        found = False
        for value in range(pops[j] + 1):
            for i in touching[j]:
                sums[i] += value
            over = any(sums[i] > upper[i] for i in touching[j])
            short = any(sums[i] + capacity[i] < lower[i] for i in touching[j])
            if not over and not short and branch(j + 1):
                x[j] = value
                found = True
            for i in touching[j]:
                sums[i] -= value
            if found or over:
                # larger values only push the same sums further over
                break
        for i in touching[j]:
            capacity[i] += pops[j]
        return found

    if branch(0):
        return tuple(x)
    return None


def realize(p: CmmdsProgram, counts: Sequence[int]) -> Solution:
    """C1 + I1 + the lowest-id `count` members of each class"""
    chosen = set(p.split.fixed)
    for cls_, count in zip(p.classes, counts):
        chosen.update(cls_.members[:count])
    return Solution.of(chosen)


def _scan_subsets(payload, start: int, end: int) -> Optional[int]:
    inst, cover = payload
    for mask in range(start, end):
        C1 = frozenset(cover[i] for i in range(len(cover)) if (mask >> i) & 1)
        program = build_cmmds(inst, frozenset(cover), C1)
        if program is not None and solve_cmmds(program) is not None:
            return mask
    return None


def vc_fpt_feasible(inst: Instance, max_cover: Optional[int] = None,
                    jobs: Optional[int] = None) -> Optional[Solution]:
    """
    Iterate subsets C1 of a minimum vertex cover as a binary counter over the
    sorted cover; the first C1 whose program is satisfiable gives the answer.
    """
    limit = max_cover if max_cover is not None else settings.VC_MAX_COVER
    cover = sorted(min_vertex_cover(inst.graph, min(limit, settings.VC_BRANCH_LIMIT)))
    logger.debug(f"Enumerating {1 << len(cover)} cover subsets (|C|={len(cover)})")

    hit = first_hit(_scan_subsets, (inst, cover), 1 << len(cover), jobs)
    if hit is None:
        return None
    C1 = frozenset(cover[i] for i in range(len(cover)) if (hit >> i) & 1)
    program = build_cmmds(inst, frozenset(cover), C1)
    return realize(program, solve_cmmds(program))
