"""
Exhaustive deciders for the source problems of the reductions, used to
check both sides of each equivalence on small instances.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..config import settings
from ..exceptions import BudgetExceeded
from ..models import CnfFormula, ColoredGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OneInThree:
    phi: CnfFormula


@dataclass(frozen=True)
class Sat:
    phi: CnfFormula


@dataclass(frozen=True)
class Mcc:
    graph: ColoredGraph


@dataclass(frozen=True)
class Mis:
    graph: ColoredGraph


SourceProblem = Union[OneInThree, Sat, Mcc, Mis]


def _assignments(num_vars: int) -> np.ndarray:
    """Row r holds assignment r, bit i-1 is variable i"""
    rows = np.arange(1 << num_vars, dtype=np.int64)[:, None]
    return ((rows >> np.arange(num_vars, dtype=np.int64)) & 1).astype(bool)


def _true_literals(bits: np.ndarray, clause) -> np.ndarray:
    """Count of true literals per assignment for one clause"""
    counts = np.zeros(bits.shape[0], dtype=np.int64)
    for lit in clause:
        column = bits[:, abs(lit) - 1]
        counts += column if lit > 0 else ~column
    return counts


def _satisfying(phi: CnfFormula, exactly_one: bool, limit: int):
    """Assignment bit matrix and the mask of rows satisfying every clause"""
    candidates = 1 << phi.num_vars
    if candidates > limit:
        raise BudgetExceeded("source assignments", candidates, limit)
    bits = _assignments(phi.num_vars)
    ok = np.ones(candidates, dtype=bool)
    for clause in phi.clauses:
        counts = _true_literals(bits, clause)
        ok &= (counts == 1) if exactly_one else (counts >= 1)
    return bits, ok


def _class_tuples_decide(g: ColoredGraph, want_edges: bool, limit: int) -> bool:
    classes = g.classes()
    candidates = math.prod(len(c) for c in classes)
    if candidates > limit:
        raise BudgetExceeded("source class tuples", candidates, limit)
    for pick in itertools.product(*classes):
        if all(g.graph.has_edge(u, v) == want_edges for u, v in itertools.combinations(pick, 2)):
            return True
    return False


def brute_source(problem: SourceProblem, max_candidates: Optional[int] = None) -> bool:
    limit = max_candidates if max_candidates is not None else settings.SOURCE_MAX_CANDIDATES
    if isinstance(problem, OneInThree):
        return bool(_satisfying(problem.phi, True, limit)[1].any())
    if isinstance(problem, Sat):
        return bool(_satisfying(problem.phi, False, limit)[1].any())
    if isinstance(problem, Mcc):
        return _class_tuples_decide(problem.graph, want_edges=True, limit=limit)
    if isinstance(problem, Mis):
        return _class_tuples_decide(problem.graph, want_edges=False, limit=limit)
    raise TypeError(f"unknown source problem {type(problem).__name__}")


def find_assignment(phi: CnfFormula, exactly_one: bool = False,
                    max_candidates: Optional[int] = None) -> Optional[list]:
    """Lowest-numbered satisfying assignment as a list of bools, or None"""
    limit = max_candidates if max_candidates is not None else settings.SOURCE_MAX_CANDIDATES
    bits, ok = _satisfying(phi, exactly_one, limit)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    return [bool(x) for x in bits[hits[0]]]
