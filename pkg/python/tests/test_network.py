"""Tests for network construction, validation and normalization."""
from fractions import Fraction

import numpy as np
import pytest

from critpath.errors import EstimateOrderError, NetworkValidationError, NodeLookupError
from critpath.models import Activity, ThreePointEstimate
from critpath.network import (
    VIRTUAL_START, adjacency, build_network, expected_duration, normalize_terminals, prepare_network
)
from critpath.project_file import dump_project, parse_project
from critpath.validator import validate_activities, validate_estimate, validate_name
from tests.conftest import make_activities


def test_expected_duration_examples():
    """Expected time of three-point estimates."""
    assert expected_duration(7, 7, 7) == 7
    assert expected_duration(4, 5, 12) == 6
    assert expected_duration(0, 0, 0) == 0
    assert expected_duration(1, 2, 4) == Fraction(13, 6)


def test_expected_duration_order_violation():
    """a > m or m > b is rejected."""
    with pytest.raises(EstimateOrderError):
        expected_duration(5, 4, 6)
    with pytest.raises(EstimateOrderError):
        expected_duration(1, 7, 6)
    with pytest.raises(ValueError):
        expected_duration(-1, 0, 0)


def test_expected_duration_bounds_random():
    """a <= T <= b on random ordered triples."""
    rng = np.random.Generator(np.random.PCG64(2024))
    for _ in range(1000):
        a, m, b = sorted(int(x) for x in rng.integers(0, 1000, size=3))
        t = expected_duration(a, m, b)
        assert a <= t <= b
        assert t == Fraction(a + 4 * m + b, 6)


def test_build_example_network(example_network):
    """Example network keeps source D1 and warns about D10."""
    assert example_network.source == "1"
    assert example_network.sink == "11"
    assert example_network.nodes == tuple(str(i) for i in range(1, 12))
    assert example_network.arc_count == 15
    assert "D10 unreachable from source" in example_network.report.warnings
    assert example_network.sources == ["1", "10"]
    assert example_network.sinks == ["11"]


def test_build_single_arc():
    """One arc gives a valid two-node network."""
    network = build_network(make_activities([("A", "1", "2", 5)]))
    assert network.source == "1"
    assert network.sink == "2"
    assert network.report.ok
    assert not network.report.warnings


def test_build_rejects_cycle():
    """Two-node cycle is a validation error."""
    with pytest.raises(NetworkValidationError) as exc:
        build_network(make_activities([("A", "1", "2", 1), ("B", "2", "1", 1)]))
    assert "cycle found" in str(exc.value)
    assert not exc.value.report.ok


def test_build_rejects_duplicate_arc():
    """Two activities on one ordered pair are rejected."""
    with pytest.raises(NetworkValidationError) as exc:
        build_network(make_activities([("A", "1", "2", 1), ("B", "1", "2", 4)]))
    assert "duplicate arc D1->D2" in str(exc.value)


def test_build_rejects_negative_duration():
    """Negative fixed duration is rejected."""
    with pytest.raises(NetworkValidationError) as exc:
        build_network(make_activities([("A", "1", "2", -3)]))
    assert "negative duration" in str(exc.value)


def test_build_rejects_self_loop_and_empty():
    """Self-loops and empty lists are errors."""
    report = validate_activities(make_activities([("A", "1", "1", 2)]))
    assert not report.ok
    assert any("self-loop" in e for e in report.errors)
    assert validate_activities([]).errors == ["no activities"]


def test_strict_terminals(example_activities):
    """Strict mode turns multiple sources into an error."""
    with pytest.raises(NetworkValidationError) as exc:
        build_network(example_activities, strict_terminals=True)
    assert "multiple sources pre-normalization: D1, D10" in str(exc.value)


def test_normalize_adds_start(example_normalized):
    """START feeds D1 and D10 with zero-duration virtual arcs."""
    network = example_normalized
    assert network.source == VIRTUAL_START
    assert network.sink == "11"
    assert network.nodes[0] == VIRTUAL_START
    assert network.successors(VIRTUAL_START) == ("1", "10")
    assert network.duration(VIRTUAL_START, "1") == 0
    assert network.duration(VIRTUAL_START, "10") == 0
    assert network.activity(VIRTUAL_START, "1").virtual
    assert network.virtual_in_order == (VIRTUAL_START,)
    assert network.has_single_terminals


def test_normalize_idempotent(example_normalized):
    """Single-terminal networks come back unchanged."""
    assert normalize_terminals(example_normalized) is example_normalized
    chain = build_network(make_activities([("A", "1", "2", 5)]))
    assert normalize_terminals(chain) is chain


def test_normalize_two_chains():
    """Two sources joined under START."""
    network = prepare_network(make_activities([("A", "1", "3", 2), ("B", "2", "3", 4)]))
    assert network.source == VIRTUAL_START
    assert network.successors(VIRTUAL_START) == ("1", "2")


def test_normalize_multiple_sinks():
    """Multiple sinks joined under FINISH, last in node order."""
    network = prepare_network(make_activities([("A", "1", "2", 2), ("B", "1", "3", 4)]))
    assert network.sink == "FINISH"
    assert network.nodes[-1] == "FINISH"
    assert network.predecessors("FINISH") == ("2", "3")


def test_virtual_name_collision():
    """A user node called START pushes the virtual one to START*."""
    network = prepare_network(make_activities([("A", "START", "2", 2), ("B", "1", "2", 4)]))
    assert network.source == "START*"
    assert network.successors("START*") == ("1", "START")


def test_adjacency(example_network):
    """Present arcs return durations; absent arcs return None."""
    assert adjacency(example_network, "1", "3") == 5
    assert adjacency(example_network, "D1", "D3") == 5
    assert adjacency(example_network, "1", "5") is None
    assert adjacency(example_network, "3", "3") is None
    with pytest.raises(NodeLookupError):
        adjacency(example_network, "1", "42")


def test_adjacency_zero_duration_is_present():
    """A dummy arc of duration 0 is distinct from an absent arc."""
    network = build_network(make_activities([("A", "1", "2", 3), ("DUMMY", "2", "3", 0)]))
    assert adjacency(network, "2", "3") == 0
    assert adjacency(network, "2", "3") is not None
    assert adjacency(network, "1", "3") is None


def test_matrix_upper_triangular(example_normalized):
    """Node order is topological, so every present cell sits above the diagonal."""
    matrix = example_normalized.matrix
    assert len(matrix) == len(example_normalized.nodes)
    for i, row in enumerate(matrix):
        assert row[i] is None
        for j, cell in enumerate(row):
            if cell is not None:
                assert i < j
    present = sum(cell is not None for row in matrix for cell in row)
    assert present == 17


def test_topological_order(example_normalized):
    """Topological order respects every arc."""
    position = {n: k for k, n in enumerate(example_normalized.topological_order)}
    for u, v in example_normalized.arcs():
        assert position[u] < position[v]


def test_pert_triples_collapse():
    """PERT triples enter the matrix as their expected value."""
    activities = [
        Activity(name="A", from_node="1", to_node="2", duration=ThreePointEstimate(a=4, m=5, b=12)),
        Activity(name="DUMMY", from_node="2", to_node="3", duration=0),
    ]
    network = build_network(activities)
    assert network.duration("1", "2") == 6
    assert network.activity("1", "2").is_estimate
    assert network.to_document().mode == "pert"


def test_round_trip_matrix(example_normalized):
    """Dumping and re-parsing a network reproduces the matrix."""
    text = dump_project(example_normalized.to_document())
    rebuilt = prepare_network(parse_project(text).activities)
    assert rebuilt.nodes == example_normalized.nodes
    assert rebuilt.matrix == example_normalized.matrix


def test_validators():
    """Tuple-returning field validators."""
    assert validate_name("A") == (True, "Valid name")
    assert validate_name("")[0] is False
    assert validate_name("two words")[0] is False
    assert validate_estimate(ThreePointEstimate(a=1, m=2, b=3))[0] is True
    assert validate_estimate(ThreePointEstimate(a=3, m=2, b=4))[0] is False


def test_unreachable_and_dead_end_warnings():
    """Warnings name nodes off the source/sink spine."""
    report = validate_activities(make_activities([
        ("A", "1", "2", 1), ("B", "2", "4", 1), ("C", "3", "4", 1), ("D", "2", "5", 1),
    ]))
    assert report.ok
    assert "D3 unreachable from source" in report.warnings
    assert "D4 cannot reach sink" in report.warnings
