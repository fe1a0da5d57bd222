#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/18-上午9:47
"""
Real-coded genetic search over CS(n, m).

Genes are reals on [0, n - m]; `decode` maps them onto the removal simplex by proportional scaling
and largest-remainder rounding, so BLX-alpha crossover and uniform mutation act on reals while every
evaluated design stays feasible. All randomness is drawn from one Philox stream in a fixed order;
fitness evaluation consumes none, which keeps a run identical for any number of threads.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from pydantic import root_validator, validator

from censoring_design import errors
from censoring_design.cost import CostCoefficients
from censoring_design.scheme import CensoringScheme, WeibullParams, count_schemes
from censoring_design.search import OptimizationResult, Removals, SchemeEvaluator
from censoring_design.utlis import CustomModel, make_rng

# snaps scaled genes that are integral up to rounding noise before taking floors
_INTEGRAL_TOLERANCE = 1e-9


class GAConfig(CustomModel):
    population_size: int = 100
    tournament_size: int = 4
    crossover_rate: float = 0.8
    blend_alpha: float = 0.5
    mutation_rate: float = 0.1
    max_generations: int = 500
    stagnation_limit: int = 50
    elite_count: int = 1
    seed: int = 0

    @validator("population_size", "tournament_size", "max_generations", "stagnation_limit")
    def _positive(cls, value, field):
        if value < 1:
            raise errors.InvalidParameterError(field.name, value, "must be a positive integer")
        return value

    @validator("crossover_rate", "mutation_rate")
    def _probability(cls, value, field):
        if not 0.0 <= value <= 1.0:
            raise errors.InvalidParameterError(field.name, value, "must lie in [0, 1]")
        return value

    @validator("blend_alpha")
    def _non_negative_alpha(cls, value, field):
        if not (math.isfinite(value) and value >= 0):
            raise errors.InvalidParameterError(field.name, value, "must be finite and >= 0")
        return value

    @validator("elite_count")
    def _non_negative_elite(cls, value, field):
        if value < 0:
            raise errors.InvalidParameterError(field.name, value, "must be >= 0")
        return value

    @validator("seed")
    def _unsigned_64(cls, value, field):
        if not 0 <= value < 2**64:
            raise errors.InvalidParameterError(field.name, value, "must be a 64-bit unsigned integer")
        return value

    @root_validator(skip_on_failure=True)
    def _fits_population(cls, values):
        if values["tournament_size"] > values["population_size"]:
            raise errors.InvalidParameterError(
                "tournament_size", values["tournament_size"], f"exceeds population_size={values['population_size']}"
            )
        if values["elite_count"] >= values["population_size"]:
            raise errors.InvalidParameterError(
                "elite_count", values["elite_count"], f"must be below population_size={values['population_size']}"
            )
        return values


@dataclass(frozen=True, eq=False)
class Chromosome:
    genes: np.ndarray

    def __post_init__(self):
        genes = np.array(self.genes, dtype=np.float64)
        if genes.ndim != 1 or not np.all(np.isfinite(genes)) or np.any(genes < 0):
            raise errors.InvalidArgumentError(f"genes must be a vector of finite non-negative reals: {genes}")
        genes.setflags(write=False)
        object.__setattr__(self, "genes", genes)

    def __len__(self):
        return len(self.genes)

    def __eq__(self, other):
        return isinstance(other, Chromosome) and np.array_equal(self.genes, other.genes)


def _decode_removals(genes: np.ndarray, n: int, m: int) -> Removals:
    if len(genes) != m:
        raise errors.InvalidArgumentError(f"chromosome has {len(genes)} genes, expected m={m}")
    units = n - m
    if units == 0:
        return (0,) * m
    total = genes.sum()
    if total <= 0:
        genes, total = np.ones(m), float(m)
    scaled = genes * (units / total)
    nearest = np.round(scaled)
    scaled = np.where(np.abs(scaled - nearest) <= _INTEGRAL_TOLERANCE, nearest, scaled)
    floors = np.floor(scaled).astype(np.int64)
    # stable sort on the negated remainders: equal remainders keep index order
    order = np.argsort(-(scaled - floors), kind="stable")
    floors[order[: units - int(floors.sum())]] += 1
    return tuple(int(r) for r in floors)


def decode(chromosome: Chromosome, n: int, m: int) -> CensoringScheme:
    return CensoringScheme(n=n, m=m, removals=_decode_removals(chromosome.genes, n, m))


def init_population(n: int, m: int, config: GAConfig, rng: Optional[np.random.Generator] = None) -> List[Chromosome]:
    """
    Multivariate hypergeometric draws of n - m units from m categories of n - m units each.
    Without `rng` the population is seeded from config.seed.
    """
    rng = rng if rng is not None else make_rng(config.seed)
    units = n - m
    if units == 0:
        return [Chromosome(np.zeros(m)) for _ in range(config.population_size)]
    draws = rng.multivariate_hypergeometric([units] * m, units, size=config.population_size)
    return [Chromosome(row.astype(np.float64)) for row in draws]


def tournament_select(population: Sequence[Chromosome], fitness: Sequence[float], k: int, rng) -> int:
    contenders = rng.choice(len(population), size=k, replace=False)
    return int(min(contenders, key=lambda index: (-fitness[index], index)))


def blx_crossover(p1: Chromosome, p2: Chromosome, alpha: float, rng) -> Tuple[Chromosome, Chromosome]:
    if len(p1) != len(p2):
        raise errors.InvalidArgumentError(f"parents differ in length: {len(p1)} != {len(p2)}")
    gamma = (1.0 + 2.0 * alpha) * rng.random(size=len(p1)) - alpha
    c1 = (1.0 - gamma) * p1.genes + gamma * p2.genes
    c2 = (1.0 - gamma) * p2.genes + gamma * p1.genes
    return Chromosome(np.clip(c1, 0.0, None)), Chromosome(np.clip(c2, 0.0, None))


def uniform_mutation(chromosome: Chromosome, n: int, m: int, mutation_rate: float, rng) -> Chromosome:
    mask = rng.random(size=m) < mutation_rate
    if not mask.any():
        return chromosome
    genes = chromosome.genes.copy()
    genes[mask] = rng.uniform(0.0, float(n - m), size=int(mask.sum()))
    return Chromosome(genes)


class _Population:
    def __init__(self, evaluator: SchemeEvaluator, n: int, m: int):
        self.evaluator = evaluator
        self.n = n
        self.m = m

    def score(self, population: List[Chromosome], generation: int) -> Tuple[List[Removals], np.ndarray]:
        decoded = [_decode_removals(chromosome.genes, self.n, self.m) for chromosome in population]
        costs = np.asarray(self.evaluator.costs(decoded), dtype=np.float64)
        if not np.any(np.isfinite(costs)):
            raise errors.OptimizationFailedError(generation)
        return decoded, -costs


def ga_optimize(
    n: int,
    m: int,
    params: WeibullParams,
    coeffs: CostCoefficients,
    config: Optional[GAConfig] = None,
    threads: int = 1,
) -> OptimizationResult:
    config = config if config is not None else GAConfig()
    count_schemes(n, m)
    evaluator = SchemeEvaluator(n, m, params, coeffs, threads=threads)
    if n == m:
        cost = evaluator.cost((0,) * m)
        if not math.isfinite(cost):
            raise errors.OptimizationFailedError(1)
        return OptimizationResult(
            best_scheme=evaluator.scheme((0,) * m),
            best_cost=cost,
            generations_run=1,
            history=[(1, cost)],
            evaluations=evaluator.evaluations,
        )

    rng = make_rng(config.seed)
    scorer = _Population(evaluator, n, m)
    population = init_population(n, m, config, rng)
    decoded, fitness = scorer.score(population, 0)
    leader = int(np.argmax(fitness))
    best, best_cost = decoded[leader], float(-fitness[leader])
    history = [(0, best_cost)]
    logger.debug(f"GA CS({n}, {m}) seed={config.seed}: initial best {best} -> {best_cost}")

    generation, stagnation = 0, 0
    breeders = config.population_size - config.elite_count
    while generation < config.max_generations and stagnation < config.stagnation_limit:
        generation += 1
        ranking = sorted(range(len(population)), key=lambda index: (-fitness[index], index))
        elite = [population[index] for index in ranking[: config.elite_count]]

        pool = [
            population[tournament_select(population, fitness, config.tournament_size, rng)] for _ in range(breeders)
        ]
        offspring: List[Chromosome] = []
        for start in range(0, breeders - 1, 2):
            first, second = pool[start], pool[start + 1]
            if rng.random() < config.crossover_rate:
                first, second = blx_crossover(first, second, config.blend_alpha, rng)
            offspring.extend((first, second))
        if breeders % 2:
            offspring.append(pool[-1])
        offspring = [uniform_mutation(child, n, m, config.mutation_rate, rng) for child in offspring]

        population = elite + offspring
        decoded, fitness = scorer.score(population, generation)
        leader = int(np.argmax(fitness))
        if -fitness[leader] < best_cost:
            best, best_cost = decoded[leader], float(-fitness[leader])
            stagnation = 0
        else:
            stagnation += 1
        history.append((generation, best_cost))
        logger.debug(f"GA generation {generation}: best {best} -> {best_cost}, stagnation {stagnation}")

    logger.info(
        f"GA CS({n}, {m}) finished after {generation} generations: {best} -> {best_cost} "
        f"({evaluator.evaluations} evaluations)"
    )
    return OptimizationResult(
        best_scheme=evaluator.scheme(best),
        best_cost=best_cost,
        generations_run=generation,
        history=history,
        evaluations=evaluator.evaluations,
    )
