"""Pytest configuration file for test discovery, path setup and shared networks."""
import sys
from pathlib import Path

import pytest

# Add the parent directory (python/) to sys.path so imports work correctly
python_dir = Path(__file__).parent.parent
if str(python_dir) not in sys.path:
    sys.path.insert(0, str(python_dir))

from critpath.models import Activity  # noqa: E402
from critpath.network import build_network, normalize_terminals  # noqa: E402

# Eleven-node example network: (name, from, to, weeks)
EXAMPLE_ARCS = [
    ("A", "1", "2", 3),
    ("C", "1", "3", 5),
    ("B", "1", "4", 4),
    ("D", "2", "5", 6),
    ("F", "3", "4", 8),
    ("G", "3", "7", 9),
    ("E", "4", "5", 7),
    ("H", "4", "6", 10),
    ("I", "5", "11", 11),
    ("J", "6", "8", 13),
    ("i", "6", "9", 12),
    ("K", "7", "11", 14),
    ("L", "8", "11", 15),
    ("M", "9", "11", 15),
    ("N", "10", "11", 17),
]

EXAMPLE_PATH = ("1", "3", "4", "6", "8", "11")

# Every D1-to-D11 path in lexicographic order with its duration
EXAMPLE_PATHS = [
    (("1", "2", "5", "11"), 20),
    (("1", "3", "4", "5", "11"), 31),
    (("1", "3", "4", "6", "8", "11"), 51),
    (("1", "3", "4", "6", "9", "11"), 50),
    (("1", "3", "7", "11"), 28),
    (("1", "4", "5", "11"), 22),
    (("1", "4", "6", "8", "11"), 42),
    (("1", "4", "6", "9", "11"), 41),
]


def make_activities(arcs):
    return [Activity(name=n, from_node=f, to_node=t, duration=d) for n, f, t, d in arcs]


@pytest.fixture
def sample_dir() -> Path:
    return python_dir / "sample_data"


@pytest.fixture
def example_activities():
    return make_activities(EXAMPLE_ARCS)


@pytest.fixture
def example_network(example_activities):
    """Example network before terminal normalization (source D1)."""
    return build_network(example_activities)


@pytest.fixture
def example_normalized(example_network):
    """Example network with a virtual START feeding D1 and D10."""
    return normalize_terminals(example_network)


@pytest.fixture
def diamond_network():
    return build_network(make_activities([
        ("A", "1", "2", 10),
        ("B", "1", "3", 10),
        ("C", "2", "4", 1),
        ("D", "3", "4", 1),
    ]))


@pytest.fixture
def chain_network():
    return build_network(make_activities([("A", "1", "2", 2), ("B", "2", "3", 3)]))
