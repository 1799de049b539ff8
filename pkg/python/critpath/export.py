"""Result rendering: activity tables, DOT diagrams, JSON documents, population tables."""
import json
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence

from critpath.errors import ResultMismatchError
from critpath.ga import solution_row
from critpath.models import Chromosome, GAResult, ScheduleResult, ThreePointEstimate
from critpath.network import ProjectNetwork
from critpath.utils import format_exact, format_time, node_label, path_label

if TYPE_CHECKING:
    from critpath.runner import RunOutcome

STRUCTURED_FORMAT = "critpath-result"
STRUCTURED_VERSION = 1

CRITICAL_STYLE = "dashed,bold"


def _uses_estimates(network: ProjectNetwork) -> bool:
    return any(a.is_estimate for a in network.activities)


def _critical_arcs(network: ProjectNetwork, result: ScheduleResult) -> set:
    path = result.critical_path
    for node in path:
        if node not in network.rank:
            raise ResultMismatchError(f"critical path node {node_label(node)} is not in the network")
    arcs = set(zip(path, path[1:]))
    for u, v in arcs:
        if not network.has_arc(u, v):
            raise ResultMismatchError(f"critical path arc {node_label(u)}->{node_label(v)} is not in the network")
    if path and (path[0] != network.source or path[-1] != network.sink):
        raise ResultMismatchError("critical path does not join the network source and sink")
    return arcs


def render_rows(header: Sequence[str], rows: List[Sequence[str]]) -> List[str]:
    """Left-aligned text columns under a dashed rule."""
    widths = [len(h) for h in header]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return lines


def emit_table(result: ScheduleResult, network: ProjectNetwork) -> str:
    """Activity table with critical activities starred.

    Rows follow arc order (tail, then head, in node order), so virtual
    START arcs come first and FINISH arcs last. PERT networks print
    durations with 2 decimals plus the a/m/b columns.

    Args:
        result: Engine output computed on `network`
        network: Normalized network the result belongs to

    Returns:
        Table text ending with the duration, path and activity lines
    """
    critical = _critical_arcs(network, result)
    pert = _uses_estimates(network)

    header = ["#", "Activity", "From", "To", "Duration"]
    if pert:
        header += ["a", "m", "b"]
    rows = []
    for number, (u, v) in enumerate(network.arcs(), start=1):
        activity = network.activity(u, v)
        name = activity.name + ("*" if (u, v) in critical else "")
        row = [str(number), name, node_label(u), node_label(v), format_time(network.duration(u, v), pert)]
        if pert:
            if isinstance(activity.duration, ThreePointEstimate):
                est = activity.duration
                row += [format_time(est.a), format_time(est.m), format_time(est.b)]
            else:
                row += ["", "", ""]
        rows.append(row)

    lines = [f"Engine: {result.engine}"]
    if result.seed is not None:
        lines[0] += f" (seed {result.seed}, {result.generator})"
    lines += render_rows(header, rows)

    if result.schedules:
        lines.append("")
        node_rows = [
            [node_label(s.node), format_time(s.earliest, pert), format_time(s.latest, pert),
             format_time(s.slack, pert)]
            for s in result.schedules
        ]
        lines += render_rows(["Node", "E", "L", "Slack"], node_rows)

    lines.append("")
    lines.append(f"Project Duration: {format_time(result.project_duration, pert)}")
    lines.append(f"Critical Path: {result.path_text()}")
    lines.append(f"Critical Activities: {'-'.join(result.critical_activities)}")
    return "\n".join(lines) + "\n"


def dot_quote(name: str) -> str:
    """Double-quoted DOT identifier."""
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(network: ProjectNetwork, result: ScheduleResult) -> str:
    """Graphviz description of the network with the critical path dashed and bold.

    Raises:
        ResultMismatchError: the result's path is not a path of this network
    """
    critical = _critical_arcs(network, result)
    pert = _uses_estimates(network)

    lines = ["digraph critpath {", "  rankdir=LR;", "  node [shape=circle];"]
    for node in network.nodes:
        attrs = [f"label={dot_quote(node_label(node))}"]
        if node in network.virtual_nodes:
            attrs += ["shape=box", "style=dotted"]
        lines.append(f"  {dot_quote(node)} [{', '.join(attrs)}];")
    for u, v in network.arcs():
        activity = network.activity(u, v)
        attrs = [f"label={dot_quote(activity.name + ':' + format_time(network.duration(u, v), pert))}"]
        if (u, v) in critical:
            attrs.append(f'style="{CRITICAL_STYLE}"')
        if activity.virtual:
            attrs.append("color=gray")
        lines.append(f"  {dot_quote(u)} -> {dot_quote(v)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _time_pair(value) -> Dict[str, str]:
    return {"exact": format_exact(value), "display": format_time(value, fixed_decimals=True)}


def result_to_dict(result: ScheduleResult) -> Dict[str, Any]:
    """JSON-ready view of a ScheduleResult."""
    return {
        "engine": result.engine,
        "project_duration": _time_pair(result.project_duration),
        "critical_path": [node_label(n) for n in result.critical_path],
        "critical_path_text": result.path_text(),
        "critical_activities": list(result.critical_activities),
        "virtual_nodes": list(result.virtual_nodes),
        "schedules": [
            {
                "node": node_label(s.node),
                "earliest": format_exact(s.earliest),
                "latest": format_exact(s.latest),
                "slack": format_exact(s.slack),
            }
            for s in result.schedules
        ],
        "seed": result.seed,
        "generator": result.generator,
    }


def _ga_to_dict(ga: GAResult) -> Dict[str, Any]:
    return {
        "seed": ga.seed_used,
        "generator": ga.generator,
        "best_genes": [node_label(n) for n in ga.best.genes],
        "best_fitness": format_exact(ga.best.fitness),
        "history": [format_exact(v) for v in ga.history],
        "run_best": [format_exact(v) for v in ga.run_best],
        "converged_to_exact": ga.converged_to_exact,
    }


def emit_structured(outcome: "RunOutcome") -> str:
    """Indented JSON document for one run.

    Wall-clock measurements are left out, so equal inputs give
    byte-identical documents.
    """
    network = outcome.network
    record = outcome.record
    document = {
        "format": STRUCTURED_FORMAT,
        "version": STRUCTURED_VERSION,
        "project": outcome.label,
        "mode": outcome.mode,
        "nodes": [node_label(n) for n in network.nodes],
        "source": node_label(network.source),
        "sink": node_label(network.sink),
        "warnings": list(network.report.warnings),
        "results": [result_to_dict(r) for r in outcome.results],
        "ga": _ga_to_dict(outcome.ga) if outcome.ga is not None else None,
        "oracle": (
            _time_pair(outcome.oracle_duration) if outcome.oracle_duration is not None else None
        ),
        "agreement": record.agreement if record is not None else None,
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def emit_population(network: ProjectNetwork, population: Sequence[Chromosome],
                    title: Optional[str] = None) -> str:
    """Solution encoding table: one row K1..Kp per chromosome, one column per node.

    Real nodes are headed G1..Gn; virtual terminals keep their own name.
    """
    pert = _uses_estimates(network)
    header = ["K"]
    gene = 0
    for node in network.nodes:
        if node in network.virtual_nodes:
            header.append(node_label(node))
        else:
            gene += 1
            header.append(f"G{gene}")
    header += ["Path", "Fitness"]

    rows = []
    for k, chromosome in enumerate(population, start=1):
        cells = [format_time(value, pert) for value in solution_row(network, chromosome)]
        real_genes = [n for n in chromosome.genes if n not in network.virtual_nodes]
        rows.append([f"K{k}"] + cells + [path_label(real_genes), format_time(chromosome.fitness, pert)])

    lines = [title] if title else []
    lines += render_rows(header, rows)
    return "\n".join(lines) + "\n"
