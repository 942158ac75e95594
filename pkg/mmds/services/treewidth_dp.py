"""
Dynamic program over a nice tree decomposition with (c, d) states.

For a node with sorted bag (v_0, ..., v_{b-1}) the table is a boolean numpy
array of shape (2k+2,) * b. Axis i holds the digit c(v_i) * (k+1) + d(v_i):
c(v_i) = 1 iff v_i is in the partial solution, d(v_i) counts the members of
the partial solution in N[v_i] so far. An entry is True iff some S within
the processed vertices induces the state and every forgotten vertex has
membership between 1 and k. d is the running count, domination of a vertex
is only enforced when it is forgotten.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..config import settings
from ..exceptions import BudgetExceeded, InvalidDecomposition
from ..models import Instance, Solution
from .decomposition import (
    NiceTreeDecomposition,
    NodeKind,
    TreeDecomposition,
    build_tree_decomposition,
    check_nice,
    make_nice,
    validate_decomposition,
)

logger = logging.getLogger(__name__)

# Pairs of child states combined at once in a join
_JOIN_BLOCK = 1 << 18


@dataclass
class DpTable:
    bag: Tuple[int, ...]
    table: np.ndarray

    @property
    def states(self) -> int:
        return int(self.table.size)


def _radix(k: int) -> int:
    return 2 * (k + 1)


def _check_budget(bag_size: int, k: int, max_states: int) -> None:
    states = _radix(k) ** bag_size
    if states > max_states:
        raise BudgetExceeded("DP table states", states, max_states)


def _allocate(bag_size: int, k: int, max_states: int) -> np.ndarray:
    _check_budget(bag_size, k, max_states)
    return np.zeros((_radix(k),) * bag_size, dtype=bool)


def _fill(table: np.ndarray, coords: np.ndarray) -> np.ndarray:
    if table.ndim == 0:
        table[()] = len(coords) > 0
    elif len(coords):
        table[tuple(coords.T)] = True
    return table


def _neighbor_mask(inst: Instance, v: int, bag: Tuple[int, ...]) -> np.ndarray:
    nbrs = set(inst.graph.adjacency[v])
    return np.array([u in nbrs for u in bag], dtype=bool)


def _introduce(inst: Instance, child: DpTable, v: int, bag: Tuple[int, ...], max_states: int) -> np.ndarray:
    k = inst.k
    base = k + 1
    pos = bag.index(v)
    coords = np.argwhere(child.table)
    c = coords // base
    d = coords % base
    nbr = _neighbor_mask(inst, v, child.bag)
    in_bag_members = c[:, nbr].sum(axis=1)
    rows = []

    # v not in S: d(v) counts its bag neighbors in S
    dv = in_bag_members
    keep = dv <= k
    rows.append(np.insert(coords[keep], pos, dv[keep], axis=1))

    # v in S: v and every bag neighbor gain one member
    dv = in_bag_members + 1
    keep = dv <= k
    if nbr.any():
        keep &= (d[:, nbr] + 1 <= k).all(axis=1)
    moved = coords[keep].copy()
    moved[:, nbr] += 1
    rows.append(np.insert(moved, pos, base + dv[keep], axis=1))

    table = _allocate(len(bag), k, max_states)
    return _fill(table, np.concatenate(rows))


def _forget(inst: Instance, child: DpTable, v: int, max_states: int) -> np.ndarray:
    k = inst.k
    pos = child.bag.index(v)
    # a in {0,1}, b in [1, k]: v must end up dominated and within bound
    allowed = [a * (k + 1) + b for a in (0, 1) for b in range(1, k + 1)]
    _check_budget(len(child.bag) - 1, k, max_states)
    return np.asarray(np.take(child.table, allowed, axis=pos).any(axis=pos))


def _join(inst: Instance, left: DpTable, right: DpTable, max_states: int) -> np.ndarray:
    """
    Entries with the same c combine; with base(u) = |N[u] & c^-1(1)| inside the
    bag, the parent count is d1 + d2 - base, which enumerates every split
    d1 = base + g, d2 = d - g with 0 <= g <= d - base.
    """
    k = inst.k
    bag = left.bag
    table = _allocate(len(bag), k, max_states)
    if not bag:
        table[()] = bool(left.table[()] and right.table[()])
        return table

    base_radix = k + 1
    coords_l = np.argwhere(left.table)
    coords_r = np.argwhere(right.table)
    if not len(coords_l) or not len(coords_r):
        return table

    closed = np.array(
        [[u == w or inst.graph.has_edge(u, w) for w in bag] for u in bag], dtype=np.int64
    )
    weights = 1 << np.arange(len(bag), dtype=np.int64)
    c_l, d_l = coords_l // base_radix, coords_l % base_radix
    c_r, d_r = coords_r // base_radix, coords_r % base_radix
    key_l = c_l @ weights
    key_r = c_r @ weights

    for key in np.intersect1d(key_l, key_r):
        rows_l = d_l[key_l == key]
        rows_r = d_r[key_r == key]
        c = c_l[np.argmax(key_l == key)]
        base = closed @ c
        rows_l = rows_l[(rows_l >= base).all(axis=1)]
        rows_r = rows_r[(rows_r >= base).all(axis=1)]
        if not len(rows_l) or not len(rows_r):
            continue
        step = max(1, _JOIN_BLOCK // len(rows_r))
        for lo in range(0, len(rows_l), step):
            block = rows_l[lo:lo + step]
            d = block[:, None, :] + rows_r[None, :, :] - base
            d = d.reshape(-1, len(bag))
            d = d[(d <= k).all(axis=1)]
            if len(d):
                table[tuple((c * base_radix + d).T)] = True
    return table


def dp_tables(inst: Instance, ntd: NiceTreeDecomposition,
              max_states: Optional[int] = None, validate: bool = True) -> List[DpTable]:
    """Table of every node, indexed like ntd.nodes"""
    max_states = max_states if max_states is not None else settings.DP_MAX_STATES
    if validate:
        check_nice(inst.graph, ntd)

    tables: List[DpTable] = []
    for node in ntd.nodes:
        if node.kind is NodeKind.LEAF:
            table = np.ones((), dtype=bool)
        elif node.kind is NodeKind.INTRODUCE:
            table = _introduce(inst, tables[node.children[0]], node.vertex, node.bag, max_states)
        elif node.kind is NodeKind.FORGET:
            table = _forget(inst, tables[node.children[0]], node.vertex, max_states)
        else:
            left, right = node.children
            table = _join(inst, tables[left], tables[right], max_states)
        tables.append(DpTable(bag=node.bag, table=table))
    logger.debug(f"DP filled {len(tables)} tables, {sum(t.states for t in tables)} states")
    return tables


def dp_table_sizes(inst: Instance, ntd: NiceTreeDecomposition,
                   max_states: Optional[int] = None) -> List[int]:
    return [t.states for t in dp_tables(inst, ntd, max_states)]


def dp_feasible(inst: Instance, ntd: NiceTreeDecomposition, max_states: Optional[int] = None) -> bool:
    tables = dp_tables(inst, ntd, max_states)
    return bool(tables[ntd.root].table[()])


def dp_witness(inst: Instance, ntd: NiceTreeDecomposition,
               max_states: Optional[int] = None) -> Optional[Solution]:
    """
    Walk from the root to the leaves choosing, at every node, the
    lexicographically least child state consistent with the recurrences.
    """
    tables = dp_tables(inst, ntd, max_states)
    if not tables[ntd.root].table[()]:
        return None

    k = inst.k
    base_radix = k + 1
    chosen = set()
    stack: List[Tuple[int, Tuple[int, ...]]] = [(ntd.root, ())]
    while stack:
        idx, state = stack.pop()
        node = ntd.nodes[idx]
        if node.kind is NodeKind.LEAF:
            continue

        if node.kind is NodeKind.INTRODUCE:
            child = ntd.nodes[node.children[0]]
            pos = node.bag.index(node.vertex)
            digits = list(state)
            in_set = digits.pop(pos) >= base_radix
            if in_set:
                chosen.add(node.vertex)
                nbrs = set(inst.graph.adjacency[node.vertex])
                digits = [x - 1 if u in nbrs else x for u, x in zip(child.bag, digits)]
            stack.append((node.children[0], tuple(digits)))

        elif node.kind is NodeKind.FORGET:
            child_idx = node.children[0]
            child = ntd.nodes[child_idx]
            pos = child.bag.index(node.vertex)
            for digit in range(2 * base_radix):
                if digit % base_radix == 0:
                    continue
                candidate = state[:pos] + (digit,) + state[pos:]
                if tables[child_idx].table[candidate]:
                    stack.append((child_idx, candidate))
                    break

        else:
            left, right = node.children
            c = [x // base_radix for x in state]
            d = [x % base_radix for x in state]
            in_set = {u for u, cu in zip(node.bag, c) if cu}
            base = [
                sum(1 for w in inst.graph.closed_neighborhood(u) if w in in_set)
                for u in node.bag
            ]
            ranges = [range(0, du - bu + 1) for du, bu in zip(d, base)]
            for g in itertools.product(*ranges):
                state_l = tuple(cu * base_radix + bu + gu for cu, bu, gu in zip(c, base, g))
                state_r = tuple(cu * base_radix + du - gu for cu, du, gu in zip(c, d, g))
                if tables[left].table[state_l] and tables[right].table[state_r]:
                    stack.append((left, state_l))
                    stack.append((right, state_r))
                    break

    return Solution.of(chosen, inst.graph.n)


def dp_solve(inst: Instance, td: Optional[TreeDecomposition] = None,
             max_states: Optional[int] = None) -> Optional[Solution]:
    """Witness from a supplied decomposition, or from the min-fill heuristic"""
    if td is None:
        td = build_tree_decomposition(inst.graph)
    else:
        verdict = validate_decomposition(inst.graph, td)
        if not verdict.valid:
            raise InvalidDecomposition(verdict)
    ntd = make_nice(td)
    logger.info(f"DP over nice decomposition: {len(ntd.nodes)} nodes, width {ntd.width}")
    return dp_witness(inst, ntd, max_states)
