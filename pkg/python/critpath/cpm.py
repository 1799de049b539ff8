"""Exact critical path engine: forward/backward passes and a path-enumeration oracle."""
import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from critpath.errors import EnumerationOverflowError, NetworkValidationError
from critpath.models import NodeSchedule, ScheduleResult, ValidationReport
from critpath.network import ProjectNetwork, normalize_terminals
from critpath.utils import path_label

logger = logging.getLogger(__name__)

DEFAULT_MAX_PATHS = 1_000_000

Path = Tuple[str, ...]


def _require_single_terminals(network: ProjectNetwork) -> None:
    if not network.has_single_terminals:
        report = ValidationReport(errors=["passes need a terminal-normalized network (one source, one sink)"])
        raise NetworkValidationError(report)


def forward_pass(network: ProjectNetwork) -> Dict[str, Fraction]:
    """Earliest event times E_i in topological order.

    E_source = 0; E_j = max over arcs i->j of E_i + d(i,j).
    """
    _require_single_terminals(network)
    earliest: Dict[str, Fraction] = {}
    for node in network.topological_order:
        earliest[node] = max(
            (earliest[p] + network.duration(p, node) for p in network.predecessors(node)),
            default=Fraction(0),
        )
    return earliest


def backward_pass(network: ProjectNetwork, horizon: Fraction) -> Dict[str, Fraction]:
    """Latest event times L_i in reverse topological order.

    L_sink = horizon; L_i = min over arcs i->j of L_j - d(i,j).
    """
    _require_single_terminals(network)
    latest: Dict[str, Fraction] = {}
    for node in reversed(network.topological_order):
        latest[node] = min(
            (latest[s] - network.duration(node, s) for s in network.successors(node)),
            default=horizon,
        )
    return latest


def node_schedules(network: ProjectNetwork) -> Tuple[NodeSchedule, ...]:
    """E/L/slack for every node, in canonical node order."""
    earliest = forward_pass(network)
    latest = backward_pass(network, earliest[network.sink])
    return tuple(
        NodeSchedule(node=n, earliest=earliest[n], latest=latest[n], slack=latest[n] - earliest[n])
        for n in network.nodes
    )


def critical_path_exact(network: ProjectNetwork) -> ScheduleResult:
    """Longest source-to-sink path via the forward/backward passes.

    Among equally long paths the lexicographically smallest node
    sequence wins: walking from the source, take the lowest-ranked
    successor v with E_u + d(u,v) == L_v, which keeps the prefix on a
    maximum path.

    Args:
        network: Validated network; normalized here if needed

    Returns:
        ScheduleResult with engine "exact"
    """
    network = normalize_terminals(network)
    earliest = forward_pass(network)
    horizon = earliest[network.sink]
    latest = backward_pass(network, horizon)

    path = [network.source]
    node = network.source
    while node != network.sink:
        node = next(
            s for s in network.successors(node)
            if earliest[node] + network.duration(node, s) == latest[s]
        )
        path.append(node)

    schedules = tuple(
        NodeSchedule(node=n, earliest=earliest[n], latest=latest[n], slack=latest[n] - earliest[n])
        for n in network.nodes
    )
    result = ScheduleResult(
        schedules=schedules,
        critical_path=tuple(path),
        critical_activities=network.path_activities(path),
        project_duration=horizon,
        engine="exact",
        virtual_nodes=network.virtual_in_order,
    )
    logger.info(f"Exact engine: duration {horizon}, path {result.path_text()}")
    return result


def enumerate_paths(network: ProjectNetwork, max_paths: int = DEFAULT_MAX_PATHS) -> List[Tuple[Path, Fraction]]:
    """All source-to-sink paths with their duration sums.

    Depth-first, successors in node order, so paths come out in
    lexicographic order. Walks that stop at a node other than the sink
    (possible before terminal normalization) are not paths and are
    dropped.

    Args:
        network: Validated network
        max_paths: Bound on the number of paths

    Returns:
        [(path, total_duration), ...]

    Raises:
        EnumerationOverflowError: more than max_paths paths exist
    """
    sink = network.sink
    paths: List[Tuple[Path, Fraction]] = []
    stack: List[Tuple[Path, Fraction]] = [((network.source,), Fraction(0))]
    while stack:
        path, total = stack.pop()
        node = path[-1]
        if node == sink:
            paths.append((path, total))
            if len(paths) > max_paths:
                raise EnumerationOverflowError(max_paths)
            continue
        for succ in reversed(network.successors(node)):
            stack.append((path + (succ,), total + network.duration(node, succ)))
    return paths


def critical_path_bruteforce(network: ProjectNetwork, max_paths: int = DEFAULT_MAX_PATHS) -> ScheduleResult:
    """Critical path by exhaustive enumeration (test oracle).

    Args:
        network: Validated network
        max_paths: Enumeration bound

    Returns:
        ScheduleResult with engine "brute-force"
    """
    paths = enumerate_paths(network, max_paths=max_paths)
    best_path, best_total = paths[0]
    for path, total in paths[1:]:
        if total > best_total:
            best_path, best_total = path, total

    schedules = node_schedules(network) if network.has_single_terminals else ()
    logger.debug(f"Brute force: {len(paths)} paths, max {best_total} on {path_label(best_path)}")
    return ScheduleResult(
        schedules=schedules,
        critical_path=best_path,
        critical_activities=network.path_activities(best_path),
        project_duration=best_total,
        engine="brute-force",
        virtual_nodes=network.virtual_in_order,
    )
