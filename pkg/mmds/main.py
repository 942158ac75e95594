from fastapi import FastAPI
from slowapi import _rate_limit_exceeded_handler
from slowapi.errors import RateLimitExceeded
import uvicorn

from . import __version__
from .config import settings
from .routes import limiter, solve_routes, generate_routes

app = FastAPI(title="MMDS Toolkit API", version=__version__)

# Attach limiter to app state
app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)


# Health check endpoints
@app.get("/api/health")
@app.get("/health")
async def health_check():
    return {"status": "healthy", "version": __version__, "message": "MMDS Toolkit API is running"}


# Include routers with /api prefix
app.include_router(solve_routes.router, prefix="/api/solve", tags=["Solve"])
app.include_router(generate_routes.router, prefix="/api/generate", tags=["Generate"])


def serve(host: str = None, port: int = None, reload: bool = False):
    uvicorn.run("mmds.main:app", host=host or settings.API_HOST, port=port or settings.API_PORT, reload=reload)


if __name__ == "__main__":
    serve(reload=True)
