from fastapi import HTTPException, status
from slowapi import Limiter
from slowapi.util import get_remote_address

from ..config import settings
from ..exceptions import BudgetExceeded, InvalidDecomposition, MmdsError
from ..models import Graph

# Shared by every router and attached to app.state in main
limiter = Limiter(key_func=get_remote_address)


def http_error(e: MmdsError) -> HTTPException:
    if isinstance(e, BudgetExceeded):
        return HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(e))
    if isinstance(e, InvalidDecomposition):
        return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(e))


def check_size(g: Graph) -> None:
    if g.n > settings.API_MAX_VERTICES:
        raise HTTPException(
            status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
            detail=f"graph has {g.n} vertices, the API accepts at most {settings.API_MAX_VERTICES}",
        )
