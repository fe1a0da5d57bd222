import math

import pytest

from censoring_design import errors
from censoring_design.cost import scale_transform, total_cost
from censoring_design.scheme import CensoringScheme, WeibullParams, one_step_scheme
from censoring_design.search import (
    SchemeEvaluator,
    enumerate_schemes,
    exhaustive_optimum,
    iter_compositions,
    local_search_baseline,
    unit_moves,
)
from tests import oracles
from tests.conftest import DEFAULT_COSTS
from tests.oracles import brute_force_optimum, brute_force_schemes

# known optima of CS(n, m): (n, m, shape, scheme, cost)
KNOWN_OPTIMA = [
    (15, 5, 2.0, (0, 0, 0, 0, 10), 110.433),
    (15, 5, 1.0, (0, 5, 0, 0, 5), 183.9206),
    (15, 5, 0.5, (0, 7, 0, 0, 3), 476.177),
    (20, 5, 2.0, (4, 0, 0, 0, 11), 108.727),
    (20, 5, 1.0, (10, 0, 0, 0, 5), 177.876),
    (20, 5, 0.5, (0, 13, 0, 0, 2), 455.426),
]


class TestEnumerateSchemes:
    def test_order(self):
        assert [s.removals for s in enumerate_schemes(4, 2)] == [(2, 0), (1, 1), (0, 2)]

    @pytest.mark.parametrize("n, m, count", [(4, 2, 3), (15, 5, 1001), (20, 5, 3876), (9, 9, 1), (9, 1, 1)])
    def test_count(self, n, m, count):
        assert sum(1 for _ in iter_compositions(n - m, m)) == count

    def test_same_set_as_brute_force(self):
        assert sorted(s.removals for s in enumerate_schemes(10, 4)) == sorted(brute_force_schemes(10, 4))

    def test_unique(self):
        schemes = [s.removals for s in enumerate_schemes(12, 5)]
        assert len(schemes) == len(set(schemes))

    def test_invalid(self):
        with pytest.raises(errors.InvalidArgumentError):
            list(enumerate_schemes(3, 4))


class TestSchemeEvaluator:
    def test_memoized(self):
        evaluator = SchemeEvaluator(15, 5, WeibullParams(shape=2.0), DEFAULT_COSTS)
        first = evaluator.cost((3, 3, 0, 0, 4))
        assert evaluator.costs([(3, 3, 0, 0, 4), (3, 3, 0, 0, 4), (0, 0, 0, 0, 10)])[0] == first
        assert evaluator.evaluations == 2

    def test_threads_do_not_change_values(self):
        batch = [s.removals for s in enumerate_schemes(10, 3)]
        params = WeibullParams(shape=1.0)
        serial = SchemeEvaluator(10, 3, params, DEFAULT_COSTS).costs(batch)
        threaded = SchemeEvaluator(10, 3, params, DEFAULT_COSTS, threads=4).costs(batch)
        assert serial == threaded

    @pytest.mark.slow
    def test_threads_bitwise_with_refined_columns(self, rng):
        batch = list(dict.fromkeys(oracles.random_scheme(rng, 65, 15).removals for _ in range(200)))
        params = WeibullParams(shape=0.5)
        serial = SchemeEvaluator(65, 15, params, DEFAULT_COSTS, threads=1).costs(batch)
        threaded = SchemeEvaluator(65, 15, params, DEFAULT_COSTS, threads=8).costs(batch)
        assert [value.hex() for value in serial] == [value.hex() for value in threaded]

    @pytest.mark.parametrize("removals", [(3, 3, 0, 0, 3), (3, 3, 0, 4), (-1, 4, 0, 0, 7)])
    def test_feasibility_asserted(self, removals):
        evaluator = SchemeEvaluator(15, 5, WeibullParams(shape=2.0), DEFAULT_COSTS)
        with pytest.raises(AssertionError):
            evaluator.cost(removals)


class TestExhaustiveOptimum:
    @pytest.mark.parametrize("n, m", [(6, 2), (8, 3), (10, 4), (12, 5), (9, 9), (7, 1), (11, 3)])
    @pytest.mark.parametrize("shape", [0.5, 2.0])
    def test_matches_brute_force(self, n, m, shape):
        params = WeibullParams(shape=shape)
        removals, cost = brute_force_optimum(n, m, params, DEFAULT_COSTS)
        result = exhaustive_optimum(n, m, params, DEFAULT_COSTS)
        assert result.best_scheme.removals == removals
        assert result.best_cost == cost
        assert result.evaluations == len(list(brute_force_schemes(n, m)))

    def test_single_scheme(self):
        result = exhaustive_optimum(6, 6, WeibullParams(shape=1.0), DEFAULT_COSTS)
        assert result.best_scheme.removals == (0,) * 6
        assert result.evaluations == 1

    @pytest.mark.parametrize("n, m, shape, removals, known", KNOWN_OPTIMA)
    def test_known_optima(self, n, m, shape, removals, known):
        result = exhaustive_optimum(n, m, WeibullParams(shape=shape), DEFAULT_COSTS)
        assert result.best_scheme.removals == removals
        assert result.best_cost == pytest.approx(known, rel=2e-4)
        assert result.evaluations == (1001 if n == 15 else 3876)

    def test_too_large(self):
        with pytest.raises(errors.InstanceTooLargeError) as exc_info:
            exhaustive_optimum(65, 15, WeibullParams(shape=1.0), DEFAULT_COSTS)
        assert exc_info.value.count == 47855699958816
        assert "47855699958816" in str(exc_info.value)
        assert exc_info.value.exit_code == 4

    def test_budget(self):
        with pytest.raises(errors.InstanceTooLargeError):
            exhaustive_optimum(15, 5, WeibullParams(shape=1.0), DEFAULT_COSTS, budget=1000)

    def test_argmin_scale_invariant(self):
        params = WeibullParams(shape=2.0)
        scaled_params, scaled_costs = scale_transform(params, DEFAULT_COSTS, 2.0)
        before = exhaustive_optimum(15, 5, params, DEFAULT_COSTS)
        after = exhaustive_optimum(15, 5, scaled_params, scaled_costs)
        assert before.best_scheme == after.best_scheme

    def test_history(self):
        result = exhaustive_optimum(8, 3, WeibullParams(shape=1.0), DEFAULT_COSTS, progress=True)
        assert result.history == [(0, result.best_cost)]
        assert result.generations_run == 0


class TestLocalSearchBaseline:
    def test_moves(self):
        assert sorted(unit_moves((1, 0))) == [(0, 1)]
        assert len(list(unit_moves((2, 1, 0)))) == 4

    def test_start_at_optimum(self):
        params = WeibullParams(shape=2.0)
        optimum = exhaustive_optimum(15, 5, params, DEFAULT_COSTS)
        result = local_search_baseline(15, 5, params, DEFAULT_COSTS, optimum.best_scheme)
        assert result.best_scheme == optimum.best_scheme
        assert result.generations_run == 0

    def test_descends(self):
        params = WeibullParams(shape=2.0)
        start = one_step_scheme(15, 5, 5)
        result = local_search_baseline(15, 5, params, DEFAULT_COSTS, start)
        assert result.best_cost <= total_cost(start, params, DEFAULT_COSTS)
        assert result.best_cost <= 110.433 * 1.005
        costs = [cost for _, cost in result.history]
        assert costs == sorted(costs, reverse=True)
        assert [generation for generation, _ in result.history] == list(range(result.generations_run + 1))

    def test_max_iters(self):
        start = one_step_scheme(20, 5, 5)
        result = local_search_baseline(20, 5, WeibullParams(shape=1.0), DEFAULT_COSTS, start, max_iters=1)
        assert result.generations_run <= 1

    def test_start_mismatch(self):
        with pytest.raises(errors.InvalidArgumentError):
            start = CensoringScheme.of(15, 5, (0,) * 4 + (10,))
            local_search_baseline(15, 4, WeibullParams(shape=1.0), DEFAULT_COSTS, start)

    def test_single_scheme(self):
        start = CensoringScheme.of(3, 3, (0, 0, 0))
        result = local_search_baseline(3, 3, WeibullParams(shape=1.0), DEFAULT_COSTS, start)
        assert result.best_scheme.removals == (0, 0, 0)
        assert math.isfinite(result.best_cost)
