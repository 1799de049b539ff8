"""Seeded random project generator for benchmarks and property tests."""
import logging
import string
from typing import Tuple

import numpy as np

from critpath.models import Activity, ProjectDocument

logger = logging.getLogger(__name__)


def activity_name(index: int) -> str:
    """Spreadsheet-style letter code: 0 -> A, 25 -> Z, 26 -> AA."""
    letters = string.ascii_uppercase
    name = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        name = letters[rem] + name
    return name


def random_project(rng: np.random.Generator, nodes: Tuple[int, int] = (5, 12),
                   arcs: Tuple[int, int] = (6, 25), durations: Tuple[int, int] = (1, 100)) -> ProjectDocument:
    """Random acyclic CPM project.

    Arcs only run from a lower to a higher node number, so the result is
    always a DAG. Node and arc counts are drawn uniformly from the
    inclusive ranges; the arc count is capped by n(n-1)/2.

    Args:
        rng: Source of randomness
        nodes: (min, max) node count
        arcs: (min, max) arc count
        durations: (min, max) integer duration

    Returns:
        ProjectDocument in cpm mode with letter-coded activities
    """
    n = int(rng.integers(nodes[0], nodes[1] + 1))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    m = min(int(rng.integers(arcs[0], arcs[1] + 1)), len(pairs))
    chosen = np.sort(rng.choice(len(pairs), size=m, replace=False))
    times = rng.integers(durations[0], durations[1] + 1, size=m)

    activities = tuple(
        Activity(name=activity_name(k), from_node=str(pairs[idx][0]), to_node=str(pairs[idx][1]),
                 duration=int(times[k]))
        for k, idx in enumerate(chosen)
    )
    logger.debug(f"Random project: {n} nodes requested, {m} arcs")
    return ProjectDocument(mode="cpm", activities=activities)
