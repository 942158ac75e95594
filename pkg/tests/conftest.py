import os
import tempfile
from pathlib import Path

# Settings are read at import time, before any mmds module is loaded
os.environ.setdefault("MMDS_LOG_FILE", os.path.join(tempfile.mkdtemp(prefix="mmds-test-"), "runs.log"))
os.environ.setdefault("MMDS_API_RATE_LIMIT", "1000/minute")

import pytest

from mmds.models import Graph
from strategies import complete_graph, cycle_graph, path_graph

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def samples() -> Path:
    return SAMPLES

