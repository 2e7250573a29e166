import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))
sys.path.insert(0, str(ROOT / "culture"))

from lib.core import SimConfig  # noqa: E402


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    """Run replicates in-process unless a test asks for a pool."""
    monkeypatch.setenv("EVOC_THREADS", "1")


@pytest.fixture
def small_config():
    """A short run on a small grid, quick enough for unit tests."""
    return SimConfig(grid_width=6, grid_height=6, iterations=30, seed=7)
