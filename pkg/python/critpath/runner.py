"""Pipeline orchestration: one run, and the exact-vs-GA benchmark harness."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from critpath.cpm import critical_path_bruteforce, critical_path_exact
from critpath.errors import CritPathError, OracleDisagreementError, ProjectParseError
from critpath.export import emit_dot, emit_population, emit_structured, emit_table, render_rows
from critpath.ga import evolve, extract_result
from critpath.generator import random_project
from critpath.models import BenchmarkRecord, GAConfig, GAResult, RunSpec, ScheduleResult
from critpath.network import ProjectNetwork, prepare_network
from critpath.project_file import dump_project, load_project, parse_project
from critpath.utils import format_exact, format_time, timeit

logger = logging.getLogger(__name__)


@dataclass
class RunOutcome:
    """Everything one run produced."""
    label: str
    mode: str
    network: ProjectNetwork
    results: List[ScheduleResult] = field(default_factory=list)
    ga: Optional[GAResult] = None
    record: Optional[BenchmarkRecord] = None
    oracle_duration: Optional[Fraction] = None
    exact_seconds: float = 0.0
    ga_seconds: float = 0.0

    def result(self, engine: str) -> Optional[ScheduleResult]:
        return next((r for r in self.results if r.engine == engine), None)

    @property
    def primary(self) -> ScheduleResult:
        """Exact result when available, else the GA result."""
        return self.result("exact") or self.results[0]


def _load(spec: RunSpec):
    if spec.input_path is not None:
        return load_project(spec.input_path)
    return parse_project(spec.document)


def run(spec: RunSpec) -> RunOutcome:
    """Parse, build, normalize and run the requested engine(s).

    Args:
        spec: What to run

    Returns:
        RunOutcome; engine=both also carries a BenchmarkRecord

    Raises:
        ProjectParseError / NetworkValidationError: bad input
        OracleDisagreementError: oracle check on and an engine missed the maximum
        EnumerationOverflowError: oracle check on and too many paths
    """
    document = _load(spec)
    mode = spec.mode or document.mode
    if mode == "cpm" and any(a.is_estimate for a in document.activities):
        raise ProjectParseError("three-point estimate in cpm mode", field="mode")

    network = prepare_network(document.activities)
    outcome = RunOutcome(label=spec.project_label, mode=mode, network=network)

    if spec.engine in ("exact", "both"):
        exact, outcome.exact_seconds = timeit(critical_path_exact, network)
        outcome.results.append(exact)

    if spec.engine in ("ga", "both"):
        ga, outcome.ga_seconds = timeit(evolve, network, spec.ga)
        exact = outcome.result("exact")
        if exact is not None:
            ga = ga.model_copy(update={"converged_to_exact": ga.best.fitness == exact.project_duration})
            if not ga.converged_to_exact:
                logger.warning(f"GA found {ga.best.fitness}, exact engine {exact.project_duration} "
                               f"(seed {ga.seed_used})")
        outcome.ga = ga
        outcome.results.append(extract_result(network, ga))

    if spec.oracle_check:
        oracle = critical_path_bruteforce(network, max_paths=spec.max_paths)
        outcome.oracle_duration = oracle.project_duration
        for result in outcome.results:
            if result.project_duration != oracle.project_duration:
                raise OracleDisagreementError(result.engine, result.project_duration, oracle.project_duration)
        logger.info(f"Oracle check passed: {oracle.project_duration}")

    if spec.engine == "both":
        outcome.record = _record(outcome)
        logger.info(f"Benchmark record for {outcome.label}: agreement={outcome.record.agreement}")
    return outcome


def _record(outcome: RunOutcome) -> BenchmarkRecord:
    exact = outcome.result("exact")
    ga = outcome.result("ga")
    return BenchmarkRecord(
        project=outcome.label,
        nodes=len(outcome.network.real_nodes),
        activities=len([a for a in outcome.network.activities if not a.virtual]),
        exact_duration=exact.project_duration,
        ga_duration=ga.project_duration,
        critical_path=exact.path_text(),
        critical_activities="-".join(exact.critical_activities),
        agreement=exact.project_duration == ga.project_duration,
        exact_seconds=outcome.exact_seconds,
        ga_seconds=outcome.ga_seconds,
    )


def render(outcome: RunOutcome, output_format: str) -> str:
    """Render an outcome as table, structured, dot or population text."""
    if output_format == "structured":
        return emit_structured(outcome)
    if output_format == "dot":
        return emit_dot(outcome.network, outcome.primary)
    if output_format == "population":
        if outcome.ga is None:
            raise CritPathError("population output needs the GA engine")
        title = f"Initial population (seed {outcome.ga.seed_used})"
        return emit_population(outcome.network, outcome.ga.initial_population, title=title)

    blocks = [emit_table(result, outcome.network) for result in outcome.results]
    text = "\n".join(blocks)
    if outcome.record is not None:
        verdict = "agree" if outcome.record.agreement else "DISAGREE"
        text += f"\nEngines {verdict}: exact {format_time(outcome.record.exact_duration)}, " \
                f"ga {format_time(outcome.record.ga_duration)}\n"
    return text


def _benchmark_one(spec: RunSpec) -> BenchmarkRecord:
    try:
        if spec.engine != "both":
            raise CritPathError(f"benchmark needs engine=both, got {spec.engine}")
        return run(spec).record
    except (CritPathError, OSError, ValueError) as e:
        logger.error(f"Benchmark project {spec.project_label} failed: {e}")
        return BenchmarkRecord(project=spec.project_label, error=str(e))


def benchmark(specs: Sequence[RunSpec], workers: int = 1) -> Tuple[List[BenchmarkRecord], str]:
    """Run both engines on every project and summarize.

    Failures are recorded on the project's row and the harness moves on.
    Records keep input order even when projects run on worker threads.

    Args:
        specs: At least one spec, each with engine=both
        workers: Thread pool size

    Returns:
        (records, summary table text)
    """
    if not specs:
        raise ValueError("benchmark needs at least one project")
    if workers > 1 and len(specs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_benchmark_one, specs))
    else:
        records = [_benchmark_one(spec) for spec in specs]
    return records, render_summary(records)


def render_summary(records: Sequence[BenchmarkRecord]) -> str:
    """Comparison table: duration, critical path, critical activities and time per engine."""
    header = ["Project", "Nodes", "Acts", "Exact", "GA", "Agree", "Critical Path",
              "Critical Activities", "Exact (s)", "GA (s)"]
    rows = []
    for r in records:
        if r.error:
            rows.append([r.project, "-", "-", "-", "-", "error", r.error, "", "", ""])
            continue
        rows.append([
            r.project, str(r.nodes), str(r.activities),
            format_time(r.exact_duration), format_time(r.ga_duration),
            "yes" if r.agreement else "no",
            r.critical_path, r.critical_activities,
            f"{r.exact_seconds:.4f}", f"{r.ga_seconds:.4f}",
        ])
    lines = render_rows(header, rows)

    exact_total = sum(r.exact_seconds for r in records)
    ga_total = sum(r.ga_seconds for r in records)
    agreed = sum(1 for r in records if r.agreement)
    failed = sum(1 for r in records if r.error)
    lines.append("")
    lines.append(f"Total time: exact {exact_total:.4f}s, ga {ga_total:.4f}s")
    lines.append(f"Agreement: {agreed}/{len(records)} projects" + (f", {failed} failed" if failed else ""))
    return "\n".join(lines) + "\n"


def record_to_dict(record: BenchmarkRecord) -> Dict[str, Any]:
    """JSON-ready record with durations as exact rational strings."""
    data = record.model_dump()
    for key in ("exact_duration", "ga_duration"):
        if data[key] is not None:
            data[key] = format_exact(data[key])
    return data


def random_specs(count: int, seed: int, ga: GAConfig, min_nodes: int = 9, max_nodes: int = 14,
                 max_paths: int = 1_000_000) -> List[RunSpec]:
    """Benchmark specs for `count` seeded random projects labelled P1..Pn.

    Each project gets its own generator spawned from `seed`, so the set
    is reproducible.
    """
    specs = []
    for k, child in enumerate(np.random.SeedSequence(seed).spawn(count), start=1):
        rng = np.random.Generator(np.random.PCG64(child))
        document = random_project(rng, nodes=(min_nodes, max_nodes), arcs=(min_nodes, 2 * max_nodes))
        specs.append(RunSpec(document=dump_project(document), label=f"P{k}", engine="both", ga=ga,
                             max_paths=max_paths))
    return specs
