"""
Entry points shared by the CLI and the HTTP routes: timed solver runs,
generator dispatch and decomposition checks, each recorded in the run log.
"""
import logging
import time
from typing import List, Optional, Sequence, Tuple

from ..exceptions import BudgetExceeded, InvalidDecomposition, ReductionError, UsageError
from ..formats import TextLike, parse_cnf, parse_colored_graph
from ..models import Graph, Instance, Solution
from ..reductions.base import ReductionOutput
from ..reductions.mcc import mcc_witness, reduce_mcc
from ..reductions.mis_split import mis_witness, reduce_mis_split
from ..reductions.pp1in3sat import pp1in3sat_witness, reduce_pp1in3sat
from ..reductions.sat3 import reduce_sat3, sat3_witness
from ..utils.run_logger import (
    log_budget_refusal,
    log_decomposition_check,
    log_generate,
    log_minimize,
    log_solve,
)
from .decomposition import (
    DecompositionVerdict,
    TreeDecomposition,
    build_tree_decomposition,
    validate_decomposition,
)
from .oracle import brute_feasible, brute_min_membership
from .treewidth_dp import dp_solve
from .vertex_cover import vc_fpt_feasible

logger = logging.getLogger(__name__)

ALGORITHMS = ("brute", "twdp", "vcfpt")
GENERATORS = ("pp1in3sat", "mcc", "mis-split", "sat3")


def solve_instance(inst: Instance, algo: str, td: Optional[TreeDecomposition] = None,
                   jobs: Optional[int] = None, source: Optional[str] = None) -> Optional[Solution]:
    """Feasible solution or None; a decomposition may only be supplied to twdp"""
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {algo!r}, expected one of {', '.join(ALGORITHMS)}")
    if td is not None and algo != "twdp":
        raise UsageError(f"a tree decomposition is only used by algo twdp, not {algo}")
    g = inst.graph
    start = time.perf_counter()
    try:
        if algo == "brute":
            result = brute_feasible(inst, jobs=jobs)
        elif algo == "twdp":
            if td is not None:
                verdict = validate_decomposition(g, td)
                log_decomposition_check(verdict.valid, str(verdict), source)
                if not verdict.valid:
                    raise InvalidDecomposition(verdict)
            result = dp_solve(inst, td)
        else:
            result = vc_fpt_feasible(inst, jobs=jobs)
    except BudgetExceeded as e:
        log_budget_refusal(e.what, e.needed, e.limit, source)
        raise
    log_solve(algo, g.n, g.m, inst.k, result is not None, time.perf_counter() - start, source)
    return result


def minimize(g: Graph, jobs: Optional[int] = None) -> Tuple[int, Solution]:
    start = time.perf_counter()
    try:
        k_star, witness = brute_min_membership(g, jobs=jobs)
    except BudgetExceeded as e:
        log_budget_refusal(e.what, e.needed, e.limit)
        raise
    log_minimize(g.n, g.m, k_star, time.perf_counter() - start)
    return k_star, witness


def check_decomposition(g: Graph, td: TreeDecomposition, path_only: bool = False,
                        source: Optional[str] = None) -> DecompositionVerdict:
    verdict = validate_decomposition(g, td, path_only=path_only)
    log_decomposition_check(verdict.valid, str(verdict), source)
    return verdict


def parse_clique(text: str) -> List[int]:
    """Comma or space separated vertex ids, one per color class in color order"""
    tokens = text.replace(",", " ").split()
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ReductionError(f"vertex list is not a list of integers: {text!r}")


def parse_assignment(text: str) -> List[bool]:
    """One 0/1 character per variable, x_1 first"""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ReductionError(f"assignment must be a string of 0 and 1, got {text!r}")
    return [c == "1" for c in text]


def generate(kind: str, source_text: TextLike, k: Optional[int] = None,
             clique: Optional[Sequence[int]] = None,
             assignment: Optional[Sequence[bool]] = None) -> ReductionOutput:
    """
    Run one generator on a source instance. A clique (mcc), an independent
    set (mis-split) or an assignment (pp1in3sat, sat3) attaches the
    matching witness to the output.
    """
    if kind == "pp1in3sat":
        out = reduce_pp1in3sat(parse_cnf(source_text))
        if assignment is not None:
            out.witness = pp1in3sat_witness(out, assignment)
    elif kind == "sat3":
        out = reduce_sat3(parse_cnf(source_text), k if k is not None else 2)
        if assignment is not None:
            out.witness = sat3_witness(out, assignment)
    elif kind == "mcc":
        out = reduce_mcc(parse_colored_graph(source_text))
        if clique is not None:
            out.witness = mcc_witness(out, clique)
    elif kind == "mis-split":
        g = parse_colored_graph(source_text)
        out = reduce_mis_split(g, k if k is not None else g.k)
        if clique is not None:
            out.witness = mis_witness(out, clique)
    else:
        raise ReductionError(f"unknown generator {kind!r}, expected one of {', '.join(GENERATORS)}")

    g = out.instance.graph
    log_generate(kind, g.n, g.m, out.instance.k, out.source_ref)
    return out


def decomposition_for(out: ReductionOutput) -> TreeDecomposition:
    """The generator's own certificate when it has one, else min-fill"""
    if out.decomposition is not None:
        return out.decomposition
    return build_tree_decomposition(out.instance.graph)
