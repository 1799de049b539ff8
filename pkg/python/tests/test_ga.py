"""Tests for the genetic algorithm engine."""
from fractions import Fraction

import numpy as np
import pytest

from critpath.cpm import critical_path_exact, enumerate_paths
from critpath.errors import DeadEndError, InvalidChromosomeError
from critpath.ga import (
    crossover, cut_point, evolve, extract_result, fitness, init_population, make_chromosome, make_rng,
    random_walk_path, select_elites, solution_row
)
from critpath.generator import random_project
from critpath.models import GAConfig, GAResult, GENERATOR_ID
from critpath.network import build_network, prepare_network
from critpath.utils import timeit
from tests.conftest import EXAMPLE_PATH, EXAMPLE_PATHS, make_activities

ALL_PATHS = {path for path, _ in EXAMPLE_PATHS}


def _assert_valid(network, chromosome):
    genes = chromosome.genes
    assert genes[0] == network.source
    assert genes[-1] == network.sink
    assert len(set(genes)) == len(genes)
    assert fitness(network, genes) == chromosome.fitness


def test_random_walk_stays_on_paths(example_network):
    """Every walk is one of the eight D1-to-D11 paths."""
    rng = make_rng(1)
    for _ in range(200):
        chromosome = random_walk_path(example_network, rng)
        assert chromosome.genes in ALL_PATHS
        _assert_valid(example_network, chromosome)


def test_random_walk_covers_all_paths(example_network):
    """10,000 draws visit all eight paths."""
    rng = make_rng(0)
    seen = {random_walk_path(example_network, rng).genes for _ in range(10_000)}
    assert seen == ALL_PATHS


def test_random_walk_chain(chain_network):
    rng = make_rng(3)
    for _ in range(5):
        assert random_walk_path(chain_network, rng).genes == ("1", "2", "3")


def test_random_walk_dead_end():
    """Walking into a second sink without normalization is a dead end."""
    network = build_network(make_activities([("A", "1", "2", 1), ("B", "1", "3", 1)]))
    rng = make_rng(0)
    with pytest.raises(DeadEndError):
        for _ in range(100):
            random_walk_path(network, rng)


def test_init_population(example_network):
    """population_size valid chromosomes, reproducible by seed."""
    config = GAConfig(population_size=8)
    first = init_population(example_network, config, make_rng(5))
    second = init_population(example_network, config, make_rng(5))
    assert len(first) == 8
    assert all(c.genes in ALL_PATHS for c in first)
    assert [c.genes for c in first] == [c.genes for c in second]


def test_init_population_single_arc():
    """Two identical one-arc chromosomes."""
    network = build_network(make_activities([("A", "1", "2", 5)]))
    population = init_population(network, GAConfig(population_size=2), make_rng(0))
    assert [c.genes for c in population] == [("1", "2"), ("1", "2")]


def test_fitness(example_network):
    assert fitness(example_network, EXAMPLE_PATH) == 51
    assert fitness(example_network, ("1", "2", "5", "11")) == 20
    dummy = build_network(make_activities([("DUMMY", "1", "2", 0)]))
    assert fitness(dummy, ("1", "2")) == 0


def test_fitness_rejects_invalid(example_network):
    with pytest.raises(InvalidChromosomeError):
        fitness(example_network, ("1", "5", "11"))
    with pytest.raises(InvalidChromosomeError):
        fitness(example_network, ("3", "4", "6", "8", "11"))
    with pytest.raises(InvalidChromosomeError):
        fitness(example_network, ("1",))


def test_fitness_matches_enumeration(example_normalized):
    """Cached fitness equals the enumerated path sum."""
    for path, total in enumerate_paths(example_normalized):
        assert make_chromosome(example_normalized, path).fitness == total


def test_cut_point():
    assert cut_point(6) == 2
    assert cut_point(4) == 2
    assert cut_point(3) == 1
    assert cut_point(7) == 3


def test_crossover_repairs_when_no_splice(example_network):
    """No gene of D1-D2-D5-D11 follows D3, so the child is walked on from D1-D3."""
    parent1 = make_chromosome(example_network, EXAMPLE_PATH)
    parent2 = make_chromosome(example_network, ("1", "2", "5", "11"))
    completions = {p for p in ALL_PATHS if p[:2] == ("1", "3")}
    rng = make_rng(11)
    for _ in range(50):
        child = crossover(parent1, parent2, example_network, rng)
        assert child.genes in completions
        _assert_valid(example_network, child)


def test_crossover_splices_second_parent(example_network):
    """Prefix D1-D4 joins parent2 at D6."""
    parent1 = make_chromosome(example_network, ("1", "4", "6", "9", "11"))
    parent2 = make_chromosome(example_network, EXAMPLE_PATH)
    child = crossover(parent1, parent2, example_network, make_rng(0))
    assert child.genes == ("1", "4", "6", "8", "11")
    assert child.fitness == 42


def test_crossover_identical_parents(example_network):
    parent = make_chromosome(example_network, EXAMPLE_PATH)
    assert crossover(parent, parent, example_network, make_rng(0)) == parent


def test_crossover_chain(chain_network):
    parent = make_chromosome(chain_network, ("1", "2", "3"))
    child = crossover(parent, parent, chain_network, make_rng(0))
    assert child.genes == ("1", "2", "3")


def test_select_elites(example_network):
    """Rate 0.5 of four keeps the two fittest, fittest first."""
    population = [
        make_chromosome(example_network, ("1", "2", "5", "11")),
        make_chromosome(example_network, ("1", "3", "4", "6", "9", "11")),
        make_chromosome(example_network, EXAMPLE_PATH),
        make_chromosome(example_network, ("1", "4", "6", "8", "11")),
    ]
    elites = select_elites(population, GAConfig(population_size=4, elitism_rate=0.5))
    assert [c.fitness for c in elites] == [51, 50]


def test_select_elites_keep_all(example_network):
    population = [make_chromosome(example_network, p) for p in sorted(ALL_PATHS)]
    elites = select_elites(population, GAConfig(population_size=8, elitism_rate=1.0))
    assert len(elites) == 8


def test_select_elites_ties_are_lexicographic(diamond_network):
    """Equal fitness survivors come out in gene order."""
    upper = make_chromosome(diamond_network, ("1", "2", "4"))
    lower = make_chromosome(diamond_network, ("1", "3", "4"))
    elites = select_elites([lower, upper, lower], GAConfig(population_size=3, elitism_rate=0.5))
    assert [c.genes for c in elites] == [("1", "2", "4"), ("1", "3", "4")]


def test_evolve_example_all_seeds(example_normalized):
    """Default parameters find the 51-week path on at least 99 of 100 seeds."""
    misses = []
    for seed in range(100):
        result = evolve(example_normalized, GAConfig(population_size=8, elitism_rate=0.25,
                                                     generations=10, iterations=1, seed=seed))
        if result.best.fitness != 51:
            misses.append((seed, result.best.fitness))
    assert len(misses) <= 1, f"missed seeds: {misses}"


def test_evolve_best_genes(example_normalized):
    config = GAConfig(population_size=16, generations=20, iterations=3, seed=0)
    result = evolve(example_normalized, config)
    assert result.best.fitness == 51
    assert result.best.genes == ("START",) + EXAMPLE_PATH
    assert result.seed_used == 0
    assert result.generator == GENERATOR_ID
    assert len(result.run_best) == 3


def test_evolve_deterministic(example_normalized):
    """Same network and config give the same result."""
    config = GAConfig(population_size=8, generations=10, iterations=3, seed=42)
    first = evolve(example_normalized, config)
    second = evolve(example_normalized, config)
    assert first.best == second.best
    assert first.history == second.history
    assert first.run_best == second.run_best
    assert [c.genes for c in first.initial_population] == [c.genes for c in second.initial_population]


def test_evolve_workers_match_sequential(example_normalized):
    """Restarts on worker threads give the sequential answer."""
    sequential = evolve(example_normalized, GAConfig(iterations=4, seed=9))
    threaded = evolve(example_normalized, GAConfig(iterations=4, seed=9, workers=4))
    assert sequential.best == threaded.best
    assert sequential.history == threaded.history
    assert sequential.run_best == threaded.run_best


def test_evolve_history_non_decreasing(example_normalized):
    for seed in range(20):
        result = evolve(example_normalized, GAConfig(generations=12, seed=seed))
        assert len(result.history) == 12
        assert all(a <= b for a, b in zip(result.history, result.history[1:]))
        assert result.history[-1] == result.best.fitness


def test_evolve_single_path(chain_network):
    """A single path is found in generation 1 and stays."""
    result = evolve(chain_network, GAConfig(population_size=4, generations=3))
    assert result.best.genes == ("1", "2", "3")
    assert result.history == [5, 5, 5]


def test_evolve_full_coverage_first_generation(example_network):
    """A population holding every path keeps 51 from the first generation."""
    config = GAConfig(population_size=512, elitism_rate=0.25, generations=1, seed=3)
    result = evolve(example_network, config)
    assert {c.genes for c in result.initial_population} == ALL_PATHS
    assert result.history == [51]


def test_clone_retries_zero_still_valid(example_normalized):
    """Plain crossover (no clone repair) still produces valid paths."""
    result = evolve(example_normalized, GAConfig(clone_retries=0, generations=5, seed=4))
    _assert_valid(example_normalized, result.best)


def test_validity_closure_random_dags():
    """Walks and crossovers on random DAGs always give valid chromosomes."""
    seeds = np.random.SeedSequence(99).spawn(100)
    for seed in seeds:
        rng = np.random.Generator(np.random.PCG64(seed))
        network = prepare_network(random_project(rng).activities)
        population = init_population(network, GAConfig(population_size=10), rng)
        for chromosome in population:
            _assert_valid(network, chromosome)
        for _ in range(30):
            i, j = rng.integers(len(population), size=2)
            child = crossover(population[int(i)], population[int(j)], network, rng)
            _assert_valid(network, child)


@pytest.mark.slow
def test_convergence_random_dags():
    """Population min(64, 2 x paths), 20 generations, 2 restarts: the GA
    matches the exact engine on at least 99% of 500 random DAGs."""
    misses = []
    for k, seed in enumerate(np.random.SeedSequence(2718).spawn(500)):
        rng = np.random.Generator(np.random.PCG64(seed))
        network = prepare_network(random_project(rng).activities)
        paths = len(enumerate_paths(network))
        config = GAConfig(population_size=min(64, 2 * paths), elitism_rate=0.25,
                          generations=20, iterations=2, seed=k)
        found = evolve(network, config).best.fitness
        expected = critical_path_exact(network).project_duration
        assert found <= expected
        if found != expected:
            misses.append((k, found, expected))
    assert len(misses) <= 5, f"misses (trial, ga, exact): {misses}"


def test_extract_result(example_normalized):
    """Best chromosome maps to activities C-F-H-J-L; the START arc is dropped."""
    best = make_chromosome(example_normalized, ("START",) + EXAMPLE_PATH)
    ga = GAResult(best=best, history=[Fraction(51)], seed_used=7)
    result = extract_result(example_normalized, ga)
    assert result.engine == "ga"
    assert result.critical_activities == ("C", "F", "H", "J", "L")
    assert result.project_duration == 51
    assert result.path_text() == "D1-D3-D4-D6-D8-D11"
    assert result.seed == 7
    assert result.generator == GENERATOR_ID
    assert result.schedules == ()


def test_extract_result_single_arc():
    network = build_network(make_activities([("A", "1", "2", 5)]))
    ga = GAResult(best=make_chromosome(network, ("1", "2")), seed_used=0)
    assert extract_result(network, ga).critical_activities == ("A",)


def test_solution_row(example_network):
    """Per-node encoding of the critical path."""
    row = solution_row(example_network, make_chromosome(example_network, EXAMPLE_PATH))
    assert [int(v) for v in row] == [5, 0, 8, 10, 0, 13, 0, 15, 0, 0, 0]


def test_evolve_runtime_on_example(example_normalized):
    """Best of five default GA runs on the example stays under 50 ms."""
    elapsed = min(timeit(evolve, example_normalized, GAConfig(seed=seed))[1] for seed in range(5))
    assert elapsed < 0.05
