"""
Demo script: exact engine vs genetic algorithm on the shipped example network

Usage:
    python demo.py
"""
import sys
import logging
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent / "python"))

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def demo_exact(network):
    """Show the exact engine's schedule table"""
    from critpath.cpm import critical_path_exact
    from critpath.export import emit_table

    print("\n1. Exact Engine")
    print("-" * 60)
    result = critical_path_exact(network)
    print(emit_table(result, network))
    return result


def demo_ga(network, exact):
    """Run the GA on a handful of seeds and compare"""
    from critpath.ga import evolve
    from critpath.models import GAConfig
    from critpath.utils import format_time, path_label

    print("\n2. Genetic Algorithm (population 8, elitism 0.25, 10 generations)")
    print("-" * 60)
    print(f"{'Seed':<6} {'Duration':<10} {'Path':<30} {'History'}")
    print("-" * 60)
    for seed in range(5):
        result = evolve(network, GAConfig(seed=seed))
        history = " ".join(format_time(v) for v in result.history)
        mark = "" if result.best.fitness == exact.project_duration else "  (missed)"
        print(f"{seed:<6} {format_time(result.best.fitness):<10} "
              f"{path_label(g for g in result.best.genes if g not in network.virtual_nodes):<30} {history}{mark}")


def demo_population(network):
    """Show the initial population encoding"""
    from critpath.export import emit_population
    from critpath.ga import init_population, make_rng
    from critpath.models import GAConfig

    print("\n3. Initial Population (seed 0)")
    print("-" * 60)
    population = init_population(network, GAConfig(), make_rng(0))
    print(emit_population(network, population))


def main():
    """Run demo"""
    print("=" * 60)
    print("Critical Path Demo")
    print("=" * 60)

    try:
        from critpath.network import prepare_network
        from critpath.project_file import load_project

        sample = Path(__file__).parent / "python" / "sample_data" / "network_example.txt"
        network = prepare_network(load_project(sample).activities)
        exact = demo_exact(network)
        demo_ga(network, exact)
        demo_population(network)
    except Exception as e:
        logger.error(f"Demo failed: {e}")
        sys.exit(1)

    print("=" * 60)


if __name__ == "__main__":
    main()
