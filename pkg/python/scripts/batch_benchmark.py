"""Batch benchmark: exact engine vs GA on seeded random projects plus the sample files."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from critpath.config import get_settings
from critpath.models import GAConfig, RunSpec
from critpath.runner import benchmark, random_specs, record_to_dict
from critpath.utils import get_project_root, save_json

PROJECT_COUNT = 5


def main():
    """Run the benchmark and save records + summary as JSON."""
    print("=" * 70)
    print("CRITICAL PATH BENCHMARK")
    print("=" * 70)

    settings = get_settings()
    ga = GAConfig.from_settings(settings)

    sample_dir = get_project_root() / "sample_data"
    specs = [
        RunSpec(input_path=path, engine="both", ga=ga, max_paths=settings.max_paths)
        for path in sorted(sample_dir.glob("*.txt"))
    ]
    specs += random_specs(PROJECT_COUNT, settings.seed, ga, max_paths=settings.max_paths)

    records, summary = benchmark(specs, workers=settings.workers)
    print(summary)

    out_path = get_project_root() / settings.output_dir / "benchmark.json"
    save_json(out_path, {
        "ga": ga.model_dump(),
        "records": [record_to_dict(r) for r in records],
        "summary": summary,
    })
    print(f"Saved: {out_path}")
    print("=" * 70)


if __name__ == "__main__":
    main()
