"""Validators for activities and the networks built from them."""
import logging
from typing import Dict, List, Sequence, Tuple

import networkx as nx

from critpath.models import Activity, ThreePointEstimate, ValidationReport
from critpath.utils import natural_key, node_label

logger = logging.getLogger(__name__)


def validate_name(name: str) -> Tuple[bool, str]:
    """Validate activity name.

    Args:
        name: Activity label

    Returns:
        (is_valid, reason)
    """
    if not name:
        return False, "Activity name is empty"
    if any(ch.isspace() for ch in name):
        return False, f"Activity name '{name}' contains whitespace"
    return True, "Valid name"


def validate_endpoints(activity: Activity) -> Tuple[bool, str]:
    """Validate that an activity joins two distinct nodes."""
    if not activity.from_node or not activity.to_node:
        return False, f"Activity {activity.name} has an empty node id"
    if activity.from_node == activity.to_node:
        return False, f"Activity {activity.name} is a self-loop on {node_label(activity.from_node)}"
    return True, "Valid endpoints"


def validate_estimate(estimate: ThreePointEstimate) -> Tuple[bool, str]:
    """Validate three-point ordering 0 <= a <= m <= b.

    Args:
        estimate: PERT triple

    Returns:
        (is_valid, reason)
    """
    if estimate.a < 0:
        return False, "optimistic time is negative"
    if not estimate.a <= estimate.m <= estimate.b:
        return False, f"estimate order violated (a={estimate.a}, m={estimate.m}, b={estimate.b}; need a <= m <= b)"
    return True, "Valid estimate"


def validate_duration(activity: Activity) -> Tuple[bool, str]:
    """Validate the duration of one activity.

    Args:
        activity: Activity with a fixed duration or a three-point estimate

    Returns:
        (is_valid, reason)
    """
    if isinstance(activity.duration, ThreePointEstimate):
        ok, reason = validate_estimate(activity.duration)
        if not ok:
            return False, f"Activity {activity.name}: {reason}"
        return True, "Valid estimate"

    if activity.duration < 0:
        return False, f"Activity {activity.name} has negative duration {activity.duration}"

    return True, "Valid duration"


def terminals(graph: nx.DiGraph) -> Tuple[List[str], List[str]]:
    """Sources and sinks of a graph in natural node order."""
    sources = sorted((n for n in graph.nodes if graph.in_degree(n) == 0), key=natural_key)
    sinks = sorted((n for n in graph.nodes if graph.out_degree(n) == 0), key=natural_key)
    return sources, sinks


def validate_activities(activities: Sequence[Activity], strict_terminals: bool = False) -> ValidationReport:
    """Check an activity list for everything that blocks the engines.

    Errors: empty list, bad names, self-loops, negative or misordered
    durations, duplicate arcs, cycles, and (strict_terminals only)
    multiple sources or sinks. Warnings: multiple terminals, nodes
    unreachable from the primary source, nodes that cannot reach the
    primary sink.

    Args:
        activities: Activities as parsed
        strict_terminals: Reject multi-source/multi-sink inputs instead of warning

    Returns:
        ValidationReport
    """
    report = ValidationReport()
    if not activities:
        report.errors.append("no activities")
        return report

    seen: Dict[Tuple[str, str], str] = {}
    graph = nx.DiGraph()
    for activity in activities:
        ok, reason = validate_name(activity.name)
        if not ok:
            report.errors.append(reason)
        for check in (validate_endpoints, validate_duration):
            ok, reason = check(activity)
            if not ok:
                report.errors.append(reason)

        if activity.key in seen:
            report.errors.append(
                f"duplicate arc {node_label(activity.from_node)}->{node_label(activity.to_node)} "
                f"({seen[activity.key]} and {activity.name})"
            )
            continue
        seen[activity.key] = activity.name
        if activity.from_node != activity.to_node:
            graph.add_edge(activity.from_node, activity.to_node)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        nodes = [u for u, _ in cycle] + [cycle[0][0]]
        report.errors.append("cycle found: " + " -> ".join(node_label(n) for n in nodes))
        return report

    if report.errors:
        return report

    sources, sinks = terminals(graph)
    for kind, found, virtual in (("sources", sources, "START"), ("sinks", sinks, "FINISH")):
        if len(found) > 1:
            names = ", ".join(node_label(n) for n in found)
            if strict_terminals:
                report.errors.append(f"multiple {kind} pre-normalization: {names}")
            else:
                report.warnings.append(f"multiple {kind} ({names}); normalization inserts a virtual {virtual}")
    if report.errors:
        return report

    source, sink = sources[0], sinks[-1]
    reachable = nx.descendants(graph, source) | {source}
    reaching = nx.ancestors(graph, sink) | {sink}
    for node in sorted(graph.nodes, key=natural_key):
        if node not in reachable:
            report.warnings.append(f"{node_label(node)} unreachable from source")
        if node not in reaching:
            report.warnings.append(f"{node_label(node)} cannot reach sink")

    for warning in report.warnings:
        logger.warning(warning)
    return report
