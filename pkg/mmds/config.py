import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    # Exhaustive oracle
    ORACLE_MAX_FREE_VERTICES: int = int(os.getenv("MMDS_ORACLE_MAX_FREE_VERTICES", 24))
    ORACLE_CHUNK_BITS: int = int(os.getenv("MMDS_ORACLE_CHUNK_BITS", 16))

    # Vertex-cover FPT
    VC_MAX_COVER: int = int(os.getenv("MMDS_VC_MAX_COVER", 20))
    VC_BRANCH_LIMIT: int = int(os.getenv("MMDS_VC_BRANCH_LIMIT", 30))

    # Treewidth DP: largest table (number of states) allocated for one node
    DP_MAX_STATES: int = int(os.getenv("MMDS_DP_MAX_STATES", 2 ** 22))
    # Per-node table budget inside the acceptance sweeps
    BENCH_DP_MAX_STATES: int = int(os.getenv("MMDS_BENCH_DP_MAX_STATES", 2 ** 24))

    # Source-problem brute force (assignments / one-vertex-per-class tuples)
    SOURCE_MAX_CANDIDATES: int = int(os.getenv("MMDS_SOURCE_MAX_CANDIDATES", 2 ** 20))

    # Workers
    DEFAULT_JOBS: int = int(os.getenv("MMDS_DEFAULT_JOBS", 1))
    MIN_PARALLEL_RAM_GB: float = float(os.getenv("MMDS_MIN_PARALLEL_RAM_GB", 2.0))

    # Logging
    LOG_LEVEL: str = os.getenv("MMDS_LOG_LEVEL", "INFO")
    LOG_FILE: str = os.getenv("MMDS_LOG_FILE", "logs/mmds_runs.log")

    # HTTP API
    API_RATE_LIMIT: str = os.getenv("MMDS_API_RATE_LIMIT", "30/minute")
    API_MAX_VERTICES: int = int(os.getenv("MMDS_API_MAX_VERTICES", 5000))
    API_HOST: str = os.getenv("MMDS_API_HOST", "127.0.0.1")
    API_PORT: int = int(os.getenv("MMDS_API_PORT", 8000))

    class Config:
        case_sensitive = True
        env_prefix = "MMDS_"

settings = Settings()

# Budgets must be positive, otherwise every solver refuses every input
for _name in ("ORACLE_MAX_FREE_VERTICES", "ORACLE_CHUNK_BITS", "VC_MAX_COVER",
              "VC_BRANCH_LIMIT", "DP_MAX_STATES", "BENCH_DP_MAX_STATES",
              "SOURCE_MAX_CANDIDATES", "DEFAULT_JOBS"):
    if getattr(settings, _name) < 1:
        raise ValueError(
            f"MMDS_{_name} must be a positive integer (got {getattr(settings, _name)})"
        )

if settings.ORACLE_MAX_FREE_VERTICES > 40:
    raise ValueError(
        "MMDS_ORACLE_MAX_FREE_VERTICES above 40 is not supported: "
        "subset indices are enumerated as unsigned 64-bit integers in memory chunks"
    )
