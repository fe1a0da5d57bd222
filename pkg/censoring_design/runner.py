#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/22-上午10:05
import time
from typing import Callable, Dict, List

from loguru import logger

from censoring_design.analysis import (
    SensitivityRow,
    optimal_m,
    perturbed_costs,
    sensitivity_to_costs,
    sensitivity_to_shape,
)
from censoring_design.config import Command, RunConfig
from censoring_design.cost import CostCoefficients, cost_breakdown
from censoring_design.genetic import ga_optimize
from censoring_design.model import expected_duration
from censoring_design.notation import format_scheme_notation
from censoring_design.report import (
    COMPARE_COLUMNS,
    EVALUATE_COLUMNS,
    OPTIMAL_M_COLUMNS,
    OPTIMIZE_COLUMNS,
    SENSITIVITY_COLUMNS,
    SIMULATE_COLUMNS,
    Report,
)
from censoring_design.scheme import count_schemes, one_step_scheme
from censoring_design.search import OptimizationResult, exhaustive_optimum, local_search_baseline
from censoring_design.sim import monte_carlo_duration

# sensitivity-shape grid when no explicit values are given: phi0 + j * step for j in -3..3
SHAPE_STEP = 0.05
SHAPE_STEPS = 3


def _instance(config: RunConfig) -> tuple:
    return config.n, config.m, config.shape, config.scale_rate, config.k1, config.k2, config.k3


def _optimization_report(config: RunConfig, result: OptimizationResult) -> Report:
    report = Report(config.command.value, OPTIMIZE_COLUMNS)
    report.add(
        *_instance(config),
        config.seed,
        format_scheme_notation(result.best_scheme),
        result.best_cost,
        result.generations_run,
        result.evaluations,
    )
    return report


def _evaluate(config: RunConfig) -> Report:
    breakdown = cost_breakdown(config.scheme, config.params, config.coefficients)
    report = Report(config.command.value, EVALUATE_COLUMNS)
    report.add(
        *_instance(config),
        format_scheme_notation(config.scheme),
        breakdown.expected_duration,
        breakdown.variance,
        breakdown.total,
    )
    return report


def _optimize(config: RunConfig) -> Report:
    result = ga_optimize(config.n, config.m, config.params, config.coefficients, config.ga, threads=config.threads)
    return _optimization_report(config, result)


def _exhaustive(config: RunConfig) -> Report:
    result = exhaustive_optimum(
        config.n,
        config.m,
        config.params,
        config.coefficients,
        budget=config.budget,
        progress=config.progress,
        threads=config.threads,
    )
    return _optimization_report(config, result)


def _baseline_start(config: RunConfig):
    return config.scheme if config.scheme is not None else one_step_scheme(config.n, config.m, config.m)


def _baseline(config: RunConfig) -> Report:
    result = local_search_baseline(
        config.n,
        config.m,
        config.params,
        config.coefficients,
        _baseline_start(config),
        max_iters=config.max_iters,
        threads=config.threads,
    )
    return _optimization_report(config, result)


def _sensitivity_report(config: RunConfig, rows: List[SensitivityRow]) -> Report:
    report = Report(config.command.value, SENSITIVITY_COLUMNS)
    for row in rows:
        perturbed = row.perturbed_value
        if isinstance(perturbed, tuple):
            perturbed = ":".join(repr(float(value)) for value in perturbed)
        report.add(perturbed, format_scheme_notation(row.scheme_under_perturbed), row.relative_efficiency)
    return report


def _sensitivity_shape(config: RunConfig) -> Report:
    phi0 = config.phi0 if config.phi0 is not None else config.shape
    phis = config.phis
    if phis is None:
        phis = [round(phi0 + j * SHAPE_STEP, 10) for j in range(-SHAPE_STEPS, SHAPE_STEPS + 1)]
    if config.scale_rate != 1.0:
        logger.warning(f"shape sensitivity fixes the scale rate at 1, ignoring {config.scale_rate}")
    rows = sensitivity_to_shape(
        phi0,
        phis,
        config.n,
        config.m,
        config.coefficients,
        config.search_mode,
        config.ga,
        config.budget,
        config.threads,
    )
    return _sensitivity_report(config, rows)


def _sensitivity_cost(config: RunConfig) -> Report:
    c0 = config.coefficients
    if config.costs is not None:
        cs = [CostCoefficients(k1=k1, k2=k2, k3=k3) for k1, k2, k3 in config.costs]
    else:
        cs = perturbed_costs(c0, config.deltas)
    rows = sensitivity_to_costs(
        c0,
        cs,
        config.n,
        config.m,
        config.params,
        config.search_mode,
        config.ga,
        config.budget,
        config.threads,
    )
    return _sensitivity_report(config, rows)


def _optimal_m(config: RunConfig) -> Report:
    outcome = optimal_m(
        config.n,
        config.params,
        config.coefficients,
        config.search_mode,
        config.m_range,
        config.ga,
        config.budget,
        config.threads,
    )
    report = Report(config.command.value, OPTIMAL_M_COLUMNS)
    report.add(config.n, outcome.m_star, format_scheme_notation(outcome.result.best_scheme), outcome.result.best_cost)
    return report


def _compare(config: RunConfig) -> Report:
    n, m, params, coeffs = config.n, config.m, config.params, config.coefficients
    methods: Dict[str, Callable[[], OptimizationResult]] = {
        "ga": lambda: ga_optimize(n, m, params, coeffs, config.ga, threads=config.threads),
        "baseline": lambda: local_search_baseline(
            n, m, params, coeffs, _baseline_start(config), max_iters=config.max_iters, threads=config.threads
        ),
    }
    if count_schemes(n, m) <= config.budget:
        methods["exhaustive"] = lambda: exhaustive_optimum(
            n, m, params, coeffs, budget=config.budget, progress=config.progress, threads=config.threads
        )
    else:
        logger.info(f"CS({n}, {m}) exceeds the exhaustive budget {config.budget}, comparing GA and baseline only")
    report = Report(config.command.value, COMPARE_COLUMNS)
    for method, search in methods.items():
        started = time.perf_counter()
        result = search()
        elapsed = time.perf_counter() - started
        report.add(method, format_scheme_notation(result.best_scheme), result.best_cost, result.evaluations, elapsed)
    return report


def _simulate(config: RunConfig) -> Report:
    mean, standard_error = monte_carlo_duration(
        config.scheme, config.params, config.replications, config.seed, workers=config.threads
    )
    report = Report(config.command.value, SIMULATE_COLUMNS)
    report.add(
        config.n,
        config.m,
        config.shape,
        config.scale_rate,
        format_scheme_notation(config.scheme),
        config.replications,
        config.seed,
        mean,
        standard_error,
        expected_duration(config.scheme, config.params),
    )
    return report


HANDLERS: Dict[Command, Callable[[RunConfig], Report]] = {
    Command.EVALUATE: _evaluate,
    Command.OPTIMIZE: _optimize,
    Command.EXHAUSTIVE: _exhaustive,
    Command.BASELINE: _baseline,
    Command.SENSITIVITY_SHAPE: _sensitivity_shape,
    Command.SENSITIVITY_COST: _sensitivity_cost,
    Command.OPTIMAL_M: _optimal_m,
    Command.COMPARE: _compare,
    Command.SIMULATE: _simulate,
}


def execute(config: RunConfig) -> Report:
    logger.debug(f"running {config.command.value}: {config.json()}")
    return HANDLERS[config.command](config)
