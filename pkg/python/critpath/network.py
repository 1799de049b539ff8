"""Project networks: construction, validation, terminal normalization.

Networks are activity-on-arc DAGs. Every arc carries an exact rational
duration; PERT triples are collapsed to their expected value when the
network is built, while the activities keep the original estimate for
display and serialization.
"""
import logging
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from critpath.errors import EstimateOrderError, NetworkValidationError, NodeLookupError
from critpath.models import Activity, Mode, ProjectDocument, ValidationReport
from critpath.utils import Number, natural_key, node_label, to_fraction
from critpath.validator import terminals, validate_activities

logger = logging.getLogger(__name__)

VIRTUAL_START = "START"
VIRTUAL_FINISH = "FINISH"


def expected_duration(a: Number, m: Number, b: Number) -> Fraction:
    """PERT expected time T = (a + 4m + b) / 6, exact.

    Args:
        a: Optimistic time
        m: Most likely time
        b: Pessimistic time

    Returns:
        Expected duration as a Fraction

    Raises:
        EstimateOrderError: unless 0 <= a <= m <= b
    """
    a, m, b = to_fraction(a), to_fraction(m), to_fraction(b)
    if a < 0 or not a <= m <= b:
        raise EstimateOrderError(f"estimate order violated: need 0 <= a <= m <= b, got a={a}, m={m}, b={b}")
    return (a + 4 * m + b) / 6


class ProjectNetwork:
    """Validated, immutable activity-on-arc network.

    Nodes are kept in canonical order: virtual START, real nodes in
    natural order, virtual FINISH. Every tie rule in the engines compares
    node sequences by this order.
    """

    def __init__(self, activities: Sequence[Activity], source: str, sink: str,
                 virtual_start: Optional[str] = None, virtual_finish: Optional[str] = None,
                 report: Optional[ValidationReport] = None):
        """Initialize network from already validated activities.

        Args:
            activities: Activities, at most one per ordered node pair
            source: Node every engine starts from
            sink: Node every engine ends at
            virtual_start: Id of the inserted START node, if any
            virtual_finish: Id of the inserted FINISH node, if any
            report: Validation report the activities passed
        """
        self.activities: Tuple[Activity, ...] = tuple(activities)
        self.report = report or ValidationReport()
        self.virtual_start = virtual_start
        self.virtual_finish = virtual_finish
        self.virtual_nodes: FrozenSet[str] = frozenset(n for n in (virtual_start, virtual_finish) if n)

        real = set()
        for activity in self.activities:
            real.update(activity.key)
        real -= self.virtual_nodes
        order = sorted(real, key=natural_key)
        if virtual_start:
            order.insert(0, virtual_start)
        if virtual_finish:
            order.append(virtual_finish)
        self.nodes: Tuple[str, ...] = tuple(order)
        self.rank: Dict[str, int] = {node: i for i, node in enumerate(self.nodes)}

        self._arcs: Dict[Tuple[str, str], Activity] = {}
        self._durations: Dict[Tuple[str, str], Fraction] = {}
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.nodes)
        for activity in self.activities:
            duration = activity.effective_duration
            self._arcs[activity.key] = activity
            self._durations[activity.key] = duration
            self.graph.add_edge(activity.from_node, activity.to_node, duration=duration, name=activity.name)

        by_rank = self.rank.__getitem__
        self._succ: Dict[str, Tuple[str, ...]] = {
            n: tuple(sorted(self.graph.successors(n), key=by_rank)) for n in self.nodes
        }
        self._pred: Dict[str, Tuple[str, ...]] = {
            n: tuple(sorted(self.graph.predecessors(n), key=by_rank)) for n in self.nodes
        }
        self._topo: Tuple[str, ...] = tuple(nx.lexicographical_topological_sort(self.graph, key=by_rank))

        if source not in self.rank or sink not in self.rank:
            raise NodeLookupError(f"terminal {source!r}/{sink!r} is not a network node")
        self.source = source
        self.sink = sink

    def __repr__(self) -> str:
        return (f"ProjectNetwork(nodes={len(self.nodes)}, arcs={len(self._arcs)}, "
                f"source={self.source!r}, sink={self.sink!r})")

    @property
    def arc_count(self) -> int:
        return len(self._arcs)

    @property
    def real_nodes(self) -> Tuple[str, ...]:
        return tuple(n for n in self.nodes if n not in self.virtual_nodes)

    @property
    def virtual_in_order(self) -> Tuple[str, ...]:
        return tuple(n for n in self.nodes if n in self.virtual_nodes)

    @property
    def sources(self) -> List[str]:
        return terminals(self.graph)[0]

    @property
    def sinks(self) -> List[str]:
        return terminals(self.graph)[1]

    @property
    def has_single_terminals(self) -> bool:
        return len(self.sources) == 1 and len(self.sinks) == 1

    @property
    def topological_order(self) -> Tuple[str, ...]:
        return self._topo

    @property
    def matrix(self) -> Tuple[Tuple[Optional[Fraction], ...], ...]:
        """n x n duration table in node order; None marks an absent arc."""
        return tuple(
            tuple(self._durations.get((i, j)) for j in self.nodes)
            for i in self.nodes
        )

    def resolve(self, node: str) -> str:
        """Map a node id or its display label (D7) to the node id."""
        node = str(node)
        if node in self.rank:
            return node
        if node.startswith("D") and node[1:] in self.rank:
            return node[1:]
        raise NodeLookupError(f"unknown node id {node!r}")

    def successors(self, node: str) -> Tuple[str, ...]:
        return self._succ[node]

    def predecessors(self, node: str) -> Tuple[str, ...]:
        return self._pred[node]

    def has_arc(self, i: str, j: str) -> bool:
        return (i, j) in self._durations

    def duration(self, i: str, j: str) -> Fraction:
        return self._durations[(i, j)]

    def activity(self, i: str, j: str) -> Activity:
        return self._arcs[(i, j)]

    def arcs(self) -> List[Tuple[str, str]]:
        """Arc keys ordered by (tail rank, head rank)."""
        return sorted(self._arcs, key=lambda k: (self.rank[k[0]], self.rank[k[1]]))

    def order_key(self, nodes: Iterable[str]) -> Tuple[int, ...]:
        """Comparable key for lexicographic ordering of node sequences."""
        return tuple(self.rank[n] for n in nodes)

    def path_duration(self, nodes: Sequence[str]) -> Fraction:
        """Sum of arc durations along consecutive nodes (KeyError on a missing arc)."""
        return sum((self._durations[(u, v)] for u, v in zip(nodes, nodes[1:])), Fraction(0))

    def path_activities(self, nodes: Sequence[str]) -> Tuple[str, ...]:
        """Labels of the arcs along a path, skipping virtual terminal arcs."""
        labels = []
        for u, v in zip(nodes, nodes[1:]):
            activity = self._arcs[(u, v)]
            if not activity.virtual:
                labels.append(activity.name)
        return tuple(labels)

    def to_document(self, mode: Optional[Mode] = None) -> ProjectDocument:
        """Project document of the non-virtual activities (input order kept)."""
        activities = tuple(a for a in self.activities if not a.virtual)
        if mode is None:
            mode = "pert" if any(a.is_estimate for a in activities) else "cpm"
        return ProjectDocument(mode=mode, activities=activities)


def build_network(activities: Sequence[Activity], strict_terminals: bool = False) -> ProjectNetwork:
    """Validate activities and build the duration network.

    The primary source is the first source in natural node order and
    the primary sink the last sink; extra terminals stay until
    normalize_terminals() joins them under START/FINISH.

    Args:
        activities: Parsed activities (fixed durations or PERT triples)
        strict_terminals: Reject multiple sources/sinks instead of warning

    Returns:
        ProjectNetwork carrying its validation report

    Raises:
        NetworkValidationError: the report has errors
    """
    report = validate_activities(activities, strict_terminals=strict_terminals)
    if not report.ok:
        logger.error(f"Network rejected: {'; '.join(report.errors)}")
        raise NetworkValidationError(report)

    graph = nx.DiGraph()
    graph.add_edges_from(a.key for a in activities)
    sources, sinks = terminals(graph)
    network = ProjectNetwork(activities, source=sources[0], sink=sinks[-1], report=report)
    logger.info(f"Built network: {len(network.nodes)} nodes, {network.arc_count} arcs, "
                f"source {node_label(network.source)}, sink {node_label(network.sink)}")
    return network


def _unused_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "*"
    return name


def normalize_terminals(network: ProjectNetwork) -> ProjectNetwork:
    """Join multiple sources (sinks) under a virtual START (FINISH).

    Virtual arcs have duration 0. Networks with a single source and a
    single sink are returned unchanged.

    Args:
        network: Validated network

    Returns:
        Network with exactly one source and one sink
    """
    sources, sinks = network.sources, network.sinks
    if len(sources) == 1 and len(sinks) == 1:
        return network

    activities = list(network.activities)
    virtual_start = network.virtual_start
    virtual_finish = network.virtual_finish
    source, sink = sources[0], sinks[0]

    if len(sources) > 1:
        virtual_start = _unused_name(VIRTUAL_START, network.nodes)
        activities.extend(
            Activity(name=virtual_start, from_node=virtual_start, to_node=s, duration=0, virtual=True)
            for s in sources
        )
        source = virtual_start
    if len(sinks) > 1:
        virtual_finish = _unused_name(VIRTUAL_FINISH, set(network.nodes) | {virtual_start or ""})
        activities.extend(
            Activity(name=virtual_finish, from_node=s, to_node=virtual_finish, duration=0, virtual=True)
            for s in sinks
        )
        sink = virtual_finish

    normalized = ProjectNetwork(activities, source=source, sink=sink, virtual_start=virtual_start,
                                virtual_finish=virtual_finish, report=network.report)
    logger.info(f"Normalized terminals: source {node_label(source)}, sink {node_label(sink)}")
    return normalized


def adjacency(network: ProjectNetwork, i: str, j: str) -> Optional[Fraction]:
    """Duration of the direct arc i->j, or None when there is no connection.

    Raises:
        NodeLookupError: i or j is not a node of the network
    """
    i, j = network.resolve(i), network.resolve(j)
    if not network.has_arc(i, j):
        return None
    return network.duration(i, j)


def prepare_network(activities: Sequence[Activity], strict_terminals: bool = False) -> ProjectNetwork:
    """build_network followed by normalize_terminals."""
    return normalize_terminals(build_network(activities, strict_terminals=strict_terminals))
