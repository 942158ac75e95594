"""
Exhaustive exact solver used as ground truth.

Subsets of the free vertices are enumerated as a binary counter (bit i of
the subset index selects free vertex i), vectorized over chunks of indices
with numpy. The lowest feasible subset index wins, with or without workers.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from ..config import settings
from ..exceptions import BudgetExceeded
from ..models import Graph, Instance, Solution
from ..utils.parallel import first_hit
from .checker import forcing_preprocess

logger = logging.getLogger(__name__)


def _search_payload(inst: Instance, forced_in, free):
    """Per-vertex (free-neighborhood bitmask, forced-in count) pairs"""
    g = inst.graph
    position = {v: i for i, v in enumerate(free)}
    masks = np.zeros(g.n, dtype=np.uint64)
    bases = np.zeros(g.n, dtype=np.int64)
    for v in g.vertices:
        mask = 0
        base = 0
        for u in g.closed_neighborhood(v):
            if u in position:
                mask |= 1 << position[u]
            elif u in forced_in:
                base += 1
        masks[v - 1] = mask
        bases[v - 1] = base
    return masks, bases


def _scan_range(payload, start: int, end: int) -> Optional[int]:
    """Lowest feasible subset index in [start, end), or None"""
    masks, bases, k, chunk = payload
    for lo in range(start, end, chunk):
        hi = min(lo + chunk, end)
        idx = np.arange(lo, hi, dtype=np.uint64)
        ok = np.ones(hi - lo, dtype=bool)
        for mask, base in zip(masks, bases):
            counts = np.bitwise_count(idx & mask).astype(np.int64) + base
            ok &= (counts >= 1) & (counts <= k)
            if not ok.any():
                break
        else:
            return lo + int(np.argmax(ok))
    return None


def brute_feasible(inst: Instance, use_forcing: bool = True,
                   max_free: Optional[int] = None, jobs: Optional[int] = None) -> Optional[Solution]:
    """
    A feasible solution if one exists, else None.

    With use_forcing, only supersets of the forced-in set that avoid the
    forced-out set are searched, and a forcing conflict returns None at once.
    Raises BudgetExceeded when more than `max_free` vertices remain free.
    """
    limit = max_free if max_free is not None else settings.ORACLE_MAX_FREE_VERTICES
    g = inst.graph

    forced_in = frozenset()
    forced_out = frozenset()
    if use_forcing:
        forcing = forcing_preprocess(inst)
        if forcing.conflict:
            logger.debug("Forcing conflict, instance infeasible")
            return None
        forced_in, forced_out = forcing.forced_in, forcing.forced_out

    free = [v for v in g.vertices if v not in forced_in and v not in forced_out]
    if len(free) > limit:
        raise BudgetExceeded("free vertices", len(free), limit)

    masks, bases = _search_payload(inst, forced_in, free)
    if bool(((masks == 0) & ((bases < 1) | (bases > inst.k))).any()):
        # Some vertex's membership is fixed by forcing alone and already out of bounds
        return None

    # Vertices whose membership does not depend on the free choice are already checked
    active = masks != 0
    payload = (masks[active], bases[active], inst.k, 1 << settings.ORACLE_CHUNK_BITS)
    total = 1 << len(free)
    logger.debug(f"Brute force over {total} subsets ({len(free)} free, {len(forced_in)} forced in)")

    hit = first_hit(_scan_range, payload, total, jobs)
    if hit is None:
        return None
    chosen = {free[i] for i in range(len(free)) if (hit >> i) & 1}
    return Solution.of(chosen | set(forced_in))


def brute_min_membership(g: Graph, max_free: Optional[int] = None,
                         jobs: Optional[int] = None) -> Tuple[int, Solution]:
    """Least k with a feasible solution, with the witness found at that k"""
    for k in range(1, g.max_degree + 2):
        witness = brute_feasible(Instance(g, k), use_forcing=True, max_free=max_free, jobs=jobs)
        if witness is not None:
            return k, witness
    # Not reached: S = V is feasible at k = max degree + 1
    return g.max_degree + 1, Solution.of(g.vertices)
