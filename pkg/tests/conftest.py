import pytest
import sys
import os

import numpy as np

# Add the project root to the Python path so imports work correctly
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from config import Config  # noqa: E402
from services.graph_core import Graph  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweeps (deselect with -m 'not slow')")


@pytest.fixture
def rng():
    return np.random.default_rng(Config.SEED)


@pytest.fixture
def path5():
    """P_5: the path on five vertices 0-1-2-3-4."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
