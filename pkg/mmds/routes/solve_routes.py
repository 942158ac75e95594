from typing import List, Literal, Optional

from fastapi import APIRouter, HTTPException, Request
from pydantic import BaseModel, Field

from ..config import settings
from ..exceptions import MmdsError
from ..formats import parse_graph, parse_intervals
from ..models import Instance, Solution
from ..services.checker import is_feasible, max_membership
from ..services.decomposition import parse_td
from ..services.interval import greedy_dominating, interval_graph
from ..services.runner import check_decomposition, minimize, solve_instance
from . import check_size, http_error, limiter

router = APIRouter()


# Request/Response Models
class FeasibleRequest(BaseModel):
    graph: str
    k: int = Field(ge=1)
    algo: Literal["brute", "twdp", "vcfpt"] = "brute"
    td: Optional[str] = None


class FeasibleResponse(BaseModel):
    feasible: bool
    algo: str
    members: List[int]


class MinimizeRequest(BaseModel):
    graph: str


class MinimizeResponse(BaseModel):
    k_star: int
    members: List[int]


class VerifyRequest(BaseModel):
    graph: str
    k: int = Field(ge=1)
    members: List[int]


class VerifyResponse(BaseModel):
    feasible: bool
    verdict: str


class IntervalRequest(BaseModel):
    intervals: str


class IntervalResponse(BaseModel):
    vertices: List[int]
    interval_ids: List[int]
    max_membership: int


class CheckTdRequest(BaseModel):
    graph: str
    td: str
    path_only: bool = False


class CheckTdResponse(BaseModel):
    valid: bool
    verdict: str
    width: Optional[int]


# Routes

@router.post("/feasible", response_model=FeasibleResponse)
@limiter.limit(settings.API_RATE_LIMIT)
def feasible(request: Request, body: FeasibleRequest):
    """Decide MMDS feasibility with one of the three exact solvers"""
    try:
        g = parse_graph(body.graph)
        check_size(g)
        td = parse_td(body.td) if body.td is not None else None
        result = solve_instance(Instance(g, body.k), body.algo, td=td, source="api")
    except MmdsError as e:
        raise http_error(e)
    members = result.sorted() if result is not None else []
    return FeasibleResponse(feasible=result is not None, algo=body.algo, members=members)


@router.post("/minimize", response_model=MinimizeResponse)
@limiter.limit(settings.API_RATE_LIMIT)
def minimize_membership(request: Request, body: MinimizeRequest):
    try:
        g = parse_graph(body.graph)
        check_size(g)
        k_star, witness = minimize(g)
    except MmdsError as e:
        raise http_error(e)
    return MinimizeResponse(k_star=k_star, members=witness.sorted())


@router.post("/verify", response_model=VerifyResponse)
@limiter.limit(settings.API_RATE_LIMIT)
def verify(request: Request, body: VerifyRequest):
    try:
        g = parse_graph(body.graph)
        check_size(g)
        if len(set(body.members)) != len(body.members):
            raise HTTPException(status_code=400, detail="duplicate vertex in members")
        verdict = is_feasible(Instance(g, body.k), Solution.of(body.members, g.n))
    except MmdsError as e:
        raise http_error(e)
    return VerifyResponse(feasible=verdict.feasible, verdict=str(verdict))


@router.post("/interval-greedy", response_model=IntervalResponse)
@limiter.limit(settings.API_RATE_LIMIT)
def interval_greedy(request: Request, body: IntervalRequest):
    """Greedy dominating chain; vertices are intervals numbered 1..n in input order"""
    try:
        iv = parse_intervals(body.intervals)
        if len(iv) > settings.API_MAX_VERTICES:
            raise HTTPException(status_code=413, detail=f"at most {settings.API_MAX_VERTICES} intervals")
        chosen = greedy_dominating(iv)
        peak = max_membership(interval_graph(iv), chosen)
    except MmdsError as e:
        raise http_error(e)
    return IntervalResponse(vertices=chosen.sorted(), interval_ids=iv.ids_of(chosen), max_membership=peak)


@router.post("/check-td", response_model=CheckTdResponse)
@limiter.limit(settings.API_RATE_LIMIT)
def check_td(request: Request, body: CheckTdRequest):
    try:
        g = parse_graph(body.graph)
        check_size(g)
        verdict = check_decomposition(g, parse_td(body.td), path_only=body.path_only, source="api")
    except MmdsError as e:
        raise http_error(e)
    return CheckTdResponse(valid=verdict.valid, verdict=str(verdict), width=verdict.width)
