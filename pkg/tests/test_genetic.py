import numpy as np
import pytest

from censoring_design import errors
from censoring_design.cost import total_cost
from censoring_design.genetic import (
    Chromosome,
    GAConfig,
    blx_crossover,
    decode,
    ga_optimize,
    init_population,
    tournament_select,
    uniform_mutation,
)
from censoring_design.notation import parse_scheme_notation
from censoring_design.scheme import WeibullParams, one_step_scheme
from censoring_design.search import exhaustive_optimum
from censoring_design.utlis import make_rng
from tests.conftest import DEFAULT_COSTS
from tests.oracles import ScriptedRng

SMALL_GA = GAConfig(population_size=30, max_generations=40, stagnation_limit=15, seed=7)


class TestGAConfig:
    def test_defaults(self):
        config = GAConfig()
        assert (config.population_size, config.tournament_size, config.elite_count) == (100, 4, 1)
        assert (config.crossover_rate, config.blend_alpha, config.mutation_rate) == (0.8, 0.5, 0.1)
        assert (config.max_generations, config.stagnation_limit) == (500, 50)

    @pytest.mark.parametrize(
        "overrides",
        [
            dict(tournament_size=5, population_size=4),
            dict(elite_count=10, population_size=10),
            dict(crossover_rate=1.5),
            dict(mutation_rate=-0.1),
            dict(blend_alpha=-0.5),
            dict(population_size=0),
            dict(seed=-1),
            dict(seed=2**64),
        ],
    )
    def test_invalid(self, overrides):
        with pytest.raises(errors.InvalidParameterError):
            GAConfig(**overrides)


class TestChromosome:
    @pytest.mark.parametrize("genes", [[-0.1, 1.0], [float("nan")], [[1.0, 2.0]]])
    def test_invalid(self, genes):
        with pytest.raises(errors.InvalidArgumentError):
            Chromosome(genes)

    def test_immutable(self):
        chromosome = Chromosome([1.0, 2.0])
        with pytest.raises(ValueError):
            chromosome.genes[0] = 3.0


class TestDecode:
    @pytest.mark.parametrize(
        "genes, n, m, removals",
        [
            ((0, 0, 0, 0, 10), 15, 5, (0, 0, 0, 0, 10)),
            ((1, 1), 4, 2, (1, 1)),
            ((2.6, 2.6, 0.4, 0.4, 4.0), 15, 5, (3, 3, 0, 0, 4)),
            ((0, 0, 0), 5, 3, (1, 1, 0)),
            ((5.0, 5.0, 5.0), 13, 3, (4, 3, 3)),
            ((0.3, 0.0), 2, 2, (0, 0)),
            ((1.0,), 7, 1, (6,)),
        ],
    )
    def test_examples(self, genes, n, m, removals):
        assert decode(Chromosome(genes), n, m).removals == removals

    def test_always_feasible(self, rng):
        for _ in range(500):
            m = int(rng.integers(1, 16))
            n = m + int(rng.integers(0, 51))
            genes = rng.uniform(0, 3, size=m) * (rng.random(size=m) < 0.7)
            scheme = decode(Chromosome(genes), n, m)
            assert sum(scheme.removals) == n - m

    def test_wrong_length(self):
        with pytest.raises(errors.InvalidArgumentError):
            decode(Chromosome([1.0, 2.0]), 10, 3)


class TestInitPopulation:
    def test_feasible(self):
        config = GAConfig(seed=3)
        population = init_population(20, 5, config)
        assert len(population) == 100
        assert all(decode(c, 20, 5).removals == tuple(int(g) for g in c.genes) for c in population)
        assert all(c.genes.sum() == 15 for c in population)

    def test_uniform_positions_for_one_unit(self):
        config = GAConfig(population_size=10_000, seed=11)
        genes = np.array([c.genes for c in init_population(6, 5, config)])
        assert np.all(genes.sum(axis=1) == 1)
        assert genes.mean(axis=0) == pytest.approx([0.2] * 5, abs=0.02)

    def test_deterministic(self):
        config = GAConfig(seed=99)
        first = init_population(30, 8, config)
        second = init_population(30, 8, config)
        assert all(np.array_equal(a.genes, b.genes) for a, b in zip(first, second))

    def test_no_removals(self):
        population = init_population(4, 4, GAConfig(population_size=5))
        assert all(c.genes.tolist() == [0.0] * 4 for c in population)


class TestTournamentSelect:
    # A, B, C, D, E
    FITNESS = [2.3, 1.9, 3.2, 5.8, 7.4]
    POPULATION = [Chromosome([float(i)]) for i in range(5)]

    @pytest.mark.parametrize("subset, winner", [([0, 1, 3, 4], 4), ([0, 1, 2, 3], 3)])
    def test_worked_examples(self, subset, winner):
        rng = ScriptedRng(choices=[subset])
        assert tournament_select(self.POPULATION, self.FITNESS, 4, rng) == winner

    def test_full_tournament_is_global_best(self):
        rng = make_rng(1)
        for _ in range(20):
            assert tournament_select(self.POPULATION, self.FITNESS, 5, rng) == 4

    def test_ties_go_to_lowest_index(self):
        rng = ScriptedRng(choices=[[3, 1, 2]])
        assert tournament_select(self.POPULATION, [0.0, 1.0, 1.0, 1.0, 0.0], 3, rng) == 1


class TestBlxCrossover:
    def test_worked_example(self):
        rng = ScriptedRng(randoms=[[0.4]])
        c1, c2 = blx_crossover(Chromosome([10.53]), Chromosome([15.39]), 0.5, rng)
        assert c1.genes[0] == pytest.approx(11.988, abs=1e-12)
        assert c2.genes[0] == pytest.approx(13.932, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.3])
    def test_midpoint(self, alpha):
        rng = ScriptedRng(randoms=[[0.5, 0.5]])
        c1, c2 = blx_crossover(Chromosome([2.0, 6.0]), Chromosome([4.0, 0.0]), alpha, rng)
        assert c1.genes.tolist() == pytest.approx([3.0, 3.0])
        assert c2.genes.tolist() == pytest.approx([3.0, 3.0])

    def test_equal_parents(self, rng):
        parent = Chromosome([1.5, 0.0, 7.0])
        c1, c2 = blx_crossover(parent, parent, 0.5, rng)
        assert c1.genes.tolist() == pytest.approx(parent.genes.tolist())
        assert c2.genes.tolist() == pytest.approx(parent.genes.tolist())

    def test_clamped(self):
        rng = ScriptedRng(randoms=[[0.0]])
        c1, c2 = blx_crossover(Chromosome([0.0]), Chromosome([4.0]), 0.5, rng)
        assert c1.genes[0] == 0.0
        assert c2.genes[0] == pytest.approx(6.0)

    def test_length_mismatch(self, rng):
        with pytest.raises(errors.InvalidArgumentError):
            blx_crossover(Chromosome([1.0]), Chromosome([1.0, 2.0]), 0.5, rng)


class TestUniformMutation:
    def test_worked_example(self):
        rng = ScriptedRng(randoms=[[0.7, 0.4, 0.05]], uniforms=[[4.1]])
        mutated = uniform_mutation(Chromosome([3.4, 2.6, 4.5]), 13, 3, 0.1, rng)
        assert mutated.genes.tolist() == [3.4, 2.6, 4.1]

    def test_rate_zero(self, rng):
        chromosome = Chromosome([3.4, 2.6, 4.5])
        assert uniform_mutation(chromosome, 13, 3, 0.0, rng) == chromosome

    def test_rate_one_in_range(self, rng):
        for _ in range(100):
            mutated = uniform_mutation(Chromosome([0.0] * 4), 14, 4, 1.0, rng)
            assert np.all((mutated.genes >= 0) & (mutated.genes <= 10))


class TestGaOptimize:
    def test_no_removals(self):
        result = ga_optimize(5, 5, WeibullParams(shape=1.0), DEFAULT_COSTS)
        assert result.best_scheme.removals == (0,) * 5
        assert result.generations_run == 1

    def test_deterministic_across_threads(self):
        params = WeibullParams(shape=1.0)
        first = ga_optimize(15, 5, params, DEFAULT_COSTS, SMALL_GA)
        second = ga_optimize(15, 5, params, DEFAULT_COSTS, SMALL_GA, threads=4)
        assert first == second

    def test_history_monotone(self):
        result = ga_optimize(20, 5, WeibullParams(shape=0.5), DEFAULT_COSTS, SMALL_GA)
        costs = [cost for _, cost in result.history]
        assert costs == sorted(costs, reverse=True)
        assert result.history[-1] == (result.generations_run, result.best_cost)
        assert result.generations_run <= SMALL_GA.max_generations

    def test_elitism_floor(self):
        params = WeibullParams(shape=2.0)
        result = ga_optimize(20, 5, params, DEFAULT_COSTS, SMALL_GA)
        osc_cost = total_cost(one_step_scheme(20, 5, 5), params, DEFAULT_COSTS)
        assert result.best_cost <= max(osc_cost, result.history[0][1])
        assert result.best_cost <= result.history[0][1]

    @pytest.mark.slow
    @pytest.mark.parametrize("n, m", [(15, 5), (20, 5)])
    @pytest.mark.parametrize("shape", [2.0, 1.0, 0.5])
    def test_matches_exhaustive(self, n, m, shape):
        params = WeibullParams(shape=shape)
        optimum = exhaustive_optimum(n, m, params, DEFAULT_COSTS).best_cost
        hits = sum(
            ga_optimize(n, m, params, DEFAULT_COSTS, GAConfig(seed=seed)).best_cost <= optimum * 1.001
            for seed in range(20)
        )
        assert hits >= 19

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "n, m, shape, reference",
        [(50, 15, 1.0, "6,1,8,1*7,0*3,1,12"), (65, 15, 0.5, "14,3,18,6,0,1*4,0*3,1*2,3")],
    )
    def test_large_instances(self, n, m, shape, reference):
        params = WeibullParams(shape=shape)
        result = ga_optimize(n, m, params, DEFAULT_COSTS, GAConfig(seed=1))
        assert result.best_cost <= total_cost(parse_scheme_notation(reference, n, m), params, DEFAULT_COSTS)
        assert sum(result.best_scheme.removals) == n - m
