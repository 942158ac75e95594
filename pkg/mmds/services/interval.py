"""
Interval graphs and the greedy chain that dominates an interval set with
membership at most 3.

Intervals are closed, so touching endpoints intersect. Vertices are the
intervals renumbered 1..n in input order.
"""
import logging
from typing import List, Optional

from ..exceptions import GraphError
from ..models import Graph, IntervalSet, Solution
from .checker import max_membership

logger = logging.getLogger(__name__)


def interval_graph(iv: IntervalSet) -> Graph:
    """Edge between two intervals iff max(left) <= min(right)"""
    order = sorted(range(len(iv)), key=lambda i: (iv.intervals[i][1], i))
    edges = []
    active: List[int] = []
    # sweep by left endpoint; every still-open interval intersects the new one
    for i in order:
        _, left, right = iv.intervals[i]
        active = [j for j in active if iv.intervals[j][2] >= left]
        edges.extend((j + 1, i + 1) for j in active)
        active.append(i)
    return Graph.from_edges(len(iv), edges)


def _seed(iv: IntervalSet, queue: set) -> int:
    """Leftmost left endpoint; ties to the longer interval, then the lowest id"""
    return min(queue, key=lambda i: (iv.intervals[i][1], -iv.intervals[i][2], iv.intervals[i][0]))


def _crossing(iv: IntervalSet, current: int) -> Optional[int]:
    """Among all intervals J with l(J) <= r(I) < r(J): largest r(J), ties to the lowest id"""
    r_current = iv.intervals[current][2]
    best = None
    for j, (ident, left, right) in enumerate(iv.intervals):
        if left <= r_current < right:
            if best is None:
                best = j
                continue
            _, _, best_right = iv.intervals[best]
            if right > best_right or (right == best_right and ident < iv.intervals[best][0]):
                best = j
    return best


def _overlaps(iv: IntervalSet, i: int, j: int) -> bool:
    _, a, b = iv.intervals[i]
    _, c, d = iv.intervals[j]
    return max(a, c) <= min(b, d)


def greedy_chains(iv: IntervalSet) -> List[List[int]]:
    """
    Chains of intervals from the leftmost one, each next pick crossing the
    right end of the current one and reaching furthest right. Intervals
    overlapping a chosen interval are dominated and leave the queue. When
    nothing crosses the current right end but intervals remain, there is a
    gap on the line and the seed rule starts a new chain on the remaining ones.
    Chains are returned in vertex numbering, in pick order.
    """
    if len(iv) == 0:
        raise GraphError("interval set is empty")

    queue = set(range(len(iv)))
    chains: List[List[int]] = []
    while queue:
        current = _seed(iv, queue)
        chain: List[int] = []
        while True:
            chain.append(current + 1)
            queue.discard(current)
            pick = _crossing(iv, current)
            queue = {j for j in queue if j == pick or not _overlaps(iv, current, j)}
            if pick is None or not queue:
                break
            current = pick
        chains.append(chain)
        logger.debug(f"Greedy chain ended at interval {iv.intervals[current][0]}, {len(queue)} left")
    return chains


def greedy_dominating(iv: IntervalSet) -> Solution:
    return Solution.of(v for chain in greedy_chains(iv) for v in chain)


def greedy_max_membership(iv: IntervalSet) -> int:
    return max_membership(interval_graph(iv), greedy_dominating(iv))
