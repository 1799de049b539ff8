"""Command line for critpath.

    python -m critpath.main run INPUT [--engine exact|ga|both] [--format ...]
    python -m critpath.main benchmark [INPUT ...] [--random N]

Exit status: 0 success, 1 parse/validation error, 2 oracle
disagreement, 3 path enumeration overflow.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from critpath import __version__
from critpath.config import get_settings
from critpath.errors import CritPathError
from critpath.models import GAConfig, RunSpec
from critpath.runner import benchmark, random_specs, record_to_dict, render, run
from critpath.utils import save_json

logger = logging.getLogger(__name__)


def _add_ga_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("genetic algorithm")
    group.add_argument("--pop-size", type=int, help="Population size")
    group.add_argument("--elitism-rate", type=float, help="Share of the population kept as elites, in (0, 1]")
    group.add_argument("--generations", type=int, help="Generations per run")
    group.add_argument("--iterations", type=int, help="Independent restarts")
    group.add_argument("--seed", type=int, help="Random seed")
    group.add_argument("--clone-retries", type=int, help="Re-walk attempts for duplicate offspring")
    group.add_argument("--workers", type=int, help="Worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critpath", description="Critical path analysis for CPM/PERT networks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="Analyze one project file")
    run_p.add_argument("input", type=Path, help="Project file")
    run_p.add_argument("--engine", choices=["exact", "ga", "both"], default="exact")
    run_p.add_argument("--mode", choices=["cpm", "pert"], help="Override the mode in the file header")
    run_p.add_argument("--format", dest="output_format", default="table",
                       choices=["table", "structured", "dot", "population"])
    run_p.add_argument("--oracle-check", action="store_true", help="Verify against exhaustive path enumeration")
    run_p.add_argument("--max-paths", type=int, help="Path enumeration bound")
    run_p.add_argument("--verbose", "-v", action="store_true")
    _add_ga_flags(run_p)

    bench_p = sub.add_parser("benchmark", help="Compare exact and GA engines over several projects")
    bench_p.add_argument("inputs", nargs="*", type=Path, help="Project files")
    bench_p.add_argument("--random", type=int, default=0, help="Number of random projects to add")
    bench_p.add_argument("--min-nodes", type=int, default=9)
    bench_p.add_argument("--max-nodes", type=int, default=14)
    bench_p.add_argument("--max-paths", type=int)
    bench_p.add_argument("--output", type=Path, help="Also write records and summary as JSON")
    bench_p.add_argument("--verbose", "-v", action="store_true")
    _add_ga_flags(bench_p)
    return parser


def _ga_config(args) -> GAConfig:
    return GAConfig.from_settings(
        get_settings(),
        population_size=args.pop_size,
        elitism_rate=args.elitism_rate,
        generations=args.generations,
        iterations=args.iterations,
        seed=args.seed,
        clone_retries=args.clone_retries,
        workers=args.workers,
    )


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, get_settings().log_level, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def cmd_run(args) -> int:
    settings = get_settings()
    spec = RunSpec(
        input_path=args.input,
        mode=args.mode,
        engine=args.engine,
        ga=_ga_config(args) if args.engine != "exact" else None,
        output_format=args.output_format,
        oracle_check=args.oracle_check,
        max_paths=args.max_paths or settings.max_paths,
    )
    outcome = run(spec)
    sys.stdout.write(render(outcome, spec.output_format))
    return 0


def cmd_benchmark(args) -> int:
    settings = get_settings()
    ga = _ga_config(args)
    max_paths = args.max_paths or settings.max_paths
    specs: List[RunSpec] = [
        RunSpec(input_path=path, engine="both", ga=ga, max_paths=max_paths) for path in args.inputs
    ]
    if args.random:
        specs += random_specs(args.random, ga.seed, ga, min_nodes=args.min_nodes,
                              max_nodes=args.max_nodes, max_paths=max_paths)
    if not specs:
        raise CritPathError("benchmark needs project files or --random N")

    records, summary = benchmark(specs, workers=ga.workers)
    sys.stdout.write(summary)
    if args.output:
        save_json(args.output, {"records": [record_to_dict(r) for r in records], "summary": summary})
        logger.info(f"Benchmark written to {args.output}")
    return 1 if any(r.error for r in records) else 0


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit status."""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        if args.command == "run":
            return cmd_run(args)
        return cmd_benchmark(args)
    except CritPathError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        print(f"error: invalid parameters: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
