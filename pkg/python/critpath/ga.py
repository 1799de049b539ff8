"""Genetic algorithm engine.

Chromosomes are complete source-to-sink paths and genes are nodes.
Populations start from random walks, evolve through single-point
crossover cut at one third of the first parent, and survive by elitism
alone; no mutation operator is applied. Fitness is the path duration
and the GA maximizes it.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from critpath.errors import DeadEndError, InvalidChromosomeError
from critpath.models import Chromosome, GAConfig, GAResult, ScheduleResult
from critpath.network import ProjectNetwork
from critpath.utils import node_label, path_label

logger = logging.getLogger(__name__)


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator from an int seed or a SeedSequence."""
    return np.random.Generator(np.random.PCG64(seed))


def fitness(network: ProjectNetwork, genes: Sequence[str]) -> Fraction:
    """Sum of arc durations along a source-to-sink path.

    Raises:
        InvalidChromosomeError: genes do not form a source-to-sink path
    """
    genes = tuple(genes)
    if len(genes) < 2 or genes[0] != network.source or genes[-1] != network.sink:
        raise InvalidChromosomeError(
            f"chromosome {path_label(genes)} must run from {node_label(network.source)} "
            f"to {node_label(network.sink)}"
        )
    for u, v in zip(genes, genes[1:]):
        if not network.has_arc(u, v):
            raise InvalidChromosomeError(f"chromosome {path_label(genes)} uses missing arc "
                                         f"{node_label(u)}->{node_label(v)}")
    return network.path_duration(genes)


def make_chromosome(network: ProjectNetwork, genes: Sequence[str]) -> Chromosome:
    """Validated chromosome with cached fitness."""
    genes = tuple(genes)
    return Chromosome(genes=genes, fitness=fitness(network, genes), order_key=network.order_key(genes))


def _chromosome(network: ProjectNetwork, genes: Tuple[str, ...]) -> Chromosome:
    # genes come from walks or splices, valid by construction
    return Chromosome(genes=genes, fitness=network.path_duration(genes), order_key=network.order_key(genes))


def _walk(network: ProjectNetwork, prefix: Tuple[str, ...], rng: np.random.Generator) -> Tuple[str, ...]:
    genes = list(prefix)
    node = genes[-1]
    while node != network.sink:
        successors = network.successors(node)
        if not successors:
            raise DeadEndError(f"random walk stuck at {node_label(node)}, which is not the sink")
        node = successors[int(rng.integers(len(successors)))]
        genes.append(node)
    return tuple(genes)


def random_walk_path(network: ProjectNetwork, rng: np.random.Generator) -> Chromosome:
    """Random source-to-sink path, picking a uniform successor at every node.

    Raises:
        DeadEndError: reached a node without outgoing arcs that is not the sink
    """
    return _chromosome(network, _walk(network, (network.source,), rng))


def init_population(network: ProjectNetwork, config: GAConfig, rng: np.random.Generator) -> List[Chromosome]:
    """population_size random walks; duplicates allowed."""
    return [random_walk_path(network, rng) for _ in range(config.population_size)]


def cut_point(length: int) -> int:
    """Genes kept from the first parent: one third of the length, rounded up."""
    return math.ceil(length / 3)


def crossover(parent1: Chromosome, parent2: Chromosome, network: ProjectNetwork,
              rng: np.random.Generator) -> Chromosome:
    """Single-point crossover with walk repair.

    The child keeps the first cut_point(len(parent1)) genes of parent1,
    then takes parent2's suffix from its first gene that is a successor
    of the last kept gene and shares no node with the prefix. If parent2
    offers no such gene the child is completed by a random walk, so it
    is always a valid path.
    """
    prefix = parent1.genes[:cut_point(len(parent1))]
    last = prefix[-1]
    if last == network.sink:
        return parent1

    used = set(prefix)
    for k, gene in enumerate(parent2.genes):
        if network.has_arc(last, gene):
            suffix = parent2.genes[k:]
            if used.isdisjoint(suffix):
                return _chromosome(network, prefix + suffix)
    return _chromosome(network, _walk(network, prefix, rng))


def _rank(chromosome: Chromosome):
    return (-chromosome.fitness, chromosome.order_key)


def select_elites(population: Sequence[Chromosome], config: GAConfig) -> List[Chromosome]:
    """Top ceil(elitism_rate * population_size) chromosomes, fittest first.

    Ties go to the lexicographically smaller gene sequence.
    """
    count = min(config.elite_count, len(population))
    return sorted(population, key=_rank)[:count]


def _refill(network: ProjectNetwork, elites: List[Chromosome], config: GAConfig,
            rng: np.random.Generator) -> List[Chromosome]:
    population = list(elites)
    seen = {c.genes for c in population}
    while len(population) < config.population_size:
        parent1 = elites[int(rng.integers(len(elites)))]
        parent2 = elites[int(rng.integers(len(elites)))]
        child = crossover(parent1, parent2, network, rng)
        # a clone adds nothing: re-walk the same prefix a bounded number of times
        prefix = parent1.genes[:cut_point(len(parent1))]
        for _ in range(config.clone_retries):
            if child.genes not in seen:
                break
            child = _chromosome(network, _walk(network, prefix, rng))
        seen.add(child.genes)
        population.append(child)
    return population


def _run(network: ProjectNetwork, config: GAConfig, rng: np.random.Generator):
    population = init_population(network, config, rng)
    initial = list(population)
    history: List[Fraction] = []
    for generation in range(config.generations):
        elites = select_elites(population, config)
        population = _refill(network, elites, config, rng)
        best = min(population, key=_rank)
        history.append(best.fitness)
        logger.debug(f"Generation {generation + 1}: best {best.fitness} on {path_label(best.genes)}")
    return min(population, key=_rank), history, initial


def evolve(network: ProjectNetwork, config: GAConfig) -> GAResult:
    """Run `iterations` independent GA restarts and keep the best chromosome.

    Each restart owns a generator spawned from the config seed, so the
    result does not depend on whether restarts run on worker threads.

    Args:
        network: Network whose sink is reachable from its source
        config: GA parameters

    Returns:
        GAResult with the overall best and the history of the best run
    """
    seeds = np.random.SeedSequence(config.seed).spawn(config.iterations)

    def one(seed_seq):
        return _run(network, config, make_rng(seed_seq))

    if config.workers > 1 and config.iterations > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            runs = list(pool.map(one, seeds))
    else:
        runs = [one(s) for s in seeds]

    best_index = min(range(len(runs)), key=lambda i: (_rank(runs[i][0]), i))
    best, history, initial = runs[best_index]
    logger.info(f"GA engine: best {best.fitness} on {path_label(best.genes)} "
                f"(seed {config.seed}, {config.iterations} iteration(s))")
    return GAResult(
        best=best,
        history=history,
        run_best=[run[0].fitness for run in runs],
        initial_population=initial,
        seed_used=config.seed,
    )


def extract_result(network: ProjectNetwork, ga: GAResult) -> ScheduleResult:
    """Turn the best chromosome into a ScheduleResult (engine "ga").

    Node schedules are left empty: the GA never computes event times.
    """
    genes = ga.best.genes
    duration = fitness(network, genes)
    if duration != ga.best.fitness:
        raise InvalidChromosomeError(f"cached fitness {ga.best.fitness} differs from path sum {duration}")
    return ScheduleResult(
        critical_path=genes,
        critical_activities=network.path_activities(genes),
        project_duration=duration,
        engine="ga",
        virtual_nodes=network.virtual_in_order,
        seed=ga.seed_used,
        generator=ga.generator,
    )


def solution_row(network: ProjectNetwork, chromosome: Chromosome) -> Tuple[Fraction, ...]:
    """Per-node encoding: duration of the arc leaving each node on the path, else 0."""
    leaving = {u: network.duration(u, v) for u, v in zip(chromosome.genes, chromosome.genes[1:])}
    return tuple(leaving.get(node, Fraction(0)) for node in network.nodes)
