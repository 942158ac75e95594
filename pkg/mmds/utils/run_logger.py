"""
Run audit logging utility
Records every decided solver run, generator call and budget refusal
"""
import logging
import os
from typing import Optional

from ..config import settings

# Configure run audit logger
run_logger = logging.getLogger("mmds.runs")
run_logger.setLevel(settings.LOG_LEVEL.upper())
run_logger.propagate = False

# Create formatters
formatter = logging.Formatter(
    '%(asctime)s - MMDS_RUN - %(levelname)s - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)

# File handler for the run trail
try:
    log_dir = os.path.dirname(settings.LOG_FILE)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    file_handler = logging.FileHandler(settings.LOG_FILE)
    file_handler.setFormatter(formatter)
    run_logger.addHandler(file_handler)
except OSError:
    # Read-only working directory: console only
    pass

# Console handler (stderr, so stdout stays a clean report)
console_handler = logging.StreamHandler()
console_handler.setFormatter(formatter)
console_handler.setLevel(logging.WARNING)
run_logger.addHandler(console_handler)


def log_solve(algo: str, n: int, m: int, k: int, feasible: bool, elapsed: float,
              source: Optional[str] = None):
    """Log a decided feasibility run"""
    verdict = "FEASIBLE" if feasible else "INFEASIBLE"
    message = f"Solve {verdict} - Algo: {algo} - n={n} m={m} k={k} - {elapsed:.3f}s"
    if source:
        message += f" - Source: {source}"
    run_logger.info(message)


def log_minimize(n: int, m: int, k_star: int, elapsed: float):
    """Log a minimum-membership run"""
    run_logger.info(f"Minimize - n={n} m={m} - k*={k_star} - {elapsed:.3f}s")


def log_budget_refusal(what: str, needed: int, limit: int, source: Optional[str] = None):
    """Log a solver refusing an input over its budget"""
    message = f"Budget Refused - {what}: {needed} > {limit}"
    if source:
        message += f" - Source: {source}"
    run_logger.warning(message)


def log_generate(kind: str, n: int, m: int, k: int, source_ref: str):
    """Log a reduction run"""
    run_logger.info(f"Generate {kind} - n={n} m={m} k={k} - From: {source_ref}")


def log_decomposition_check(valid: bool, detail: str, source: Optional[str] = None):
    """Log a decomposition validation"""
    status = "VALID" if valid else "INVALID"
    message = f"Decomposition {status} - {detail}"
    if source:
        message += f" - Source: {source}"
    if valid:
        run_logger.info(message)
    else:
        run_logger.warning(message)


def log_bench(criterion: str, cases: int, refused: int, passed: bool, elapsed: float):
    """Log one acceptance sweep"""
    status = "PASS" if passed else "FAIL"
    message = f"Bench {status} - {criterion} - cases={cases} refused={refused} - {elapsed:.1f}s"
    if passed:
        run_logger.info(message)
    else:
        run_logger.error(message)
