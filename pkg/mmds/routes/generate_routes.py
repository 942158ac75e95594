from typing import List, Literal, Optional

from fastapi import APIRouter, Request
from pydantic import BaseModel, Field

from ..config import settings
from ..exceptions import MmdsError
from ..formats import serialize_graph
from ..services.decomposition import serialize_td
from ..services.runner import decomposition_for, generate, parse_assignment
from . import check_size, http_error, limiter

router = APIRouter()


class GenerateRequest(BaseModel):
    source: str
    k: Optional[int] = Field(default=None, ge=1)
    clique: Optional[List[int]] = None
    assignment: Optional[str] = None
    emit_td: bool = False


class GenerateResponse(BaseModel):
    kind: str
    k: int
    instance: str
    labels: str
    source_ref: str
    witness: Optional[List[int]] = None
    vertex_cover: Optional[List[int]] = None
    td: Optional[str] = None


@router.post("/{kind}", response_model=GenerateResponse)
@limiter.limit(settings.API_RATE_LIMIT)
def generate_instance(
    request: Request,
    kind: Literal["pp1in3sat", "mcc", "mis-split", "sat3"],
    body: GenerateRequest,
):
    """Build an MMDS instance from a source instance with one of the four generators"""
    try:
        assignment = parse_assignment(body.assignment) if body.assignment is not None else None
        out = generate(kind, body.source, k=body.k, clique=body.clique, assignment=assignment)
        g = out.instance.graph
        check_size(g)
        td = serialize_td(decomposition_for(out), g.n) if body.emit_td else None
    except MmdsError as e:
        raise http_error(e)

    return GenerateResponse(
        kind=kind,
        k=out.instance.k,
        instance=serialize_graph(g),
        labels=out.labels_text(),
        source_ref=out.source_ref,
        witness=out.witness.sorted() if out.witness is not None else None,
        vertex_cover=sorted(out.vertex_cover) if out.vertex_cover is not None else None,
        td=td,
    )
