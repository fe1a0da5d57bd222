#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/19-下午2:31
import enum
import math
from typing import List, Optional, Sequence, Tuple, Union

from loguru import logger

from censoring_design import errors
from censoring_design.cost import CostCoefficients, total_cost
from censoring_design.genetic import GAConfig, ga_optimize
from censoring_design.scheme import CensoringScheme, WeibullParams, count_schemes
from censoring_design.search import OptimizationResult, exhaustive_optimum
from censoring_design.utlis import DEFAULT_EXHAUSTIVE_BUDGET, CustomModel


class SearchMode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    GA = "ga"


class SensitivityRow(CustomModel):
    perturbed_value: Union[float, Tuple[float, float, float]]
    scheme_under_perturbed: CensoringScheme
    relative_efficiency: float


class OptimalMResult(CustomModel):
    m_star: int
    result: OptimizationResult
    # (m, best cost for that m) over the searched range
    profile: List[Tuple[int, float]]


def relative_efficiency(optimal_cost: float, achieved_cost: float) -> float:
    if not (math.isfinite(optimal_cost) and math.isfinite(achieved_cost) and achieved_cost > 0):
        raise errors.InvalidArgumentError(f"cannot compare costs {optimal_cost} and {achieved_cost}")
    return optimal_cost / achieved_cost


def optimize(
    n: int,
    m: int,
    params: WeibullParams,
    coeffs: CostCoefficients,
    search_mode: SearchMode = SearchMode.EXHAUSTIVE,
    ga_config: Optional[GAConfig] = None,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
    threads: int = 1,
) -> OptimizationResult:
    if SearchMode(search_mode) == SearchMode.EXHAUSTIVE:
        return exhaustive_optimum(n, m, params, coeffs, budget=budget, threads=threads)
    return ga_optimize(n, m, params, coeffs, ga_config, threads=threads)


def _rows(
    perturbed: Sequence[Union[float, Tuple[float, float, float]]],
    schemes: Sequence[CensoringScheme],
    achieved: Sequence[float],
    baseline_cost: float,
) -> List[SensitivityRow]:
    # best cost seen under the truth, so RE stays <= 1 when the baseline came from the GA
    reference = min([baseline_cost, *achieved])
    return [
        SensitivityRow(
            perturbed_value=value,
            scheme_under_perturbed=scheme,
            relative_efficiency=relative_efficiency(reference, cost),
        )
        for value, scheme, cost in zip(perturbed, schemes, achieved)
    ]


def sensitivity_to_shape(
    phi0: float,
    phis: Sequence[float],
    n: int,
    m: int,
    coeffs: CostCoefficients,
    search_mode: SearchMode = SearchMode.EXHAUSTIVE,
    ga_config: Optional[GAConfig] = None,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
    threads: int = 1,
) -> List[SensitivityRow]:
    """RE1(phi): the design optimal under a misspecified shape phi, judged at the true shape phi0 (rho = 1)."""
    truth = WeibullParams(shape=phi0, scale_rate=1.0)
    baseline = optimize(n, m, truth, coeffs, search_mode, ga_config, budget, threads)
    schemes, achieved = [], []
    for phi in phis:
        if phi == phi0:
            scheme = baseline.best_scheme
        else:
            assumed = WeibullParams(shape=phi)
            scheme = optimize(n, m, assumed, coeffs, search_mode, ga_config, budget, threads).best_scheme
        schemes.append(scheme)
        achieved.append(total_cost(scheme, truth, coeffs))
        logger.info(f"shape {phi}: optimal scheme {scheme}, cost under {phi0} is {achieved[-1]}")
    return _rows(list(phis), schemes, achieved, baseline.best_cost)


def sensitivity_to_costs(
    c0: CostCoefficients,
    cs: Sequence[CostCoefficients],
    n: int,
    m: int,
    params: WeibullParams,
    search_mode: SearchMode = SearchMode.EXHAUSTIVE,
    ga_config: Optional[GAConfig] = None,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
    threads: int = 1,
) -> List[SensitivityRow]:
    """RE2(C): the design optimal under misspecified cost coefficients C, judged under the true C0."""
    baseline = optimize(n, m, params, c0, search_mode, ga_config, budget, threads)
    schemes, achieved = [], []
    for coeffs in cs:
        if coeffs == c0:
            scheme = baseline.best_scheme
        else:
            scheme = optimize(n, m, params, coeffs, search_mode, ga_config, budget, threads).best_scheme
        schemes.append(scheme)
        achieved.append(total_cost(scheme, params, c0))
        logger.info(f"costs {coeffs.as_tuple()}: optimal scheme {scheme}, cost under {c0.as_tuple()} is {achieved[-1]}")
    return _rows([coeffs.as_tuple() for coeffs in cs], schemes, achieved, baseline.best_cost)


def perturbed_costs(c0: CostCoefficients, deltas: Sequence[float]) -> List[CostCoefficients]:
    """Each coefficient moved by -d and +d for every d in `deltas`, the others held at c0."""
    base = c0.as_tuple()
    result = []
    for position in range(3):
        for delta in sorted({-abs(d) for d in deltas} | {abs(d) for d in deltas}):
            if delta == 0:
                continue
            values = list(base)
            values[position] += delta
            result.append(CostCoefficients(k1=values[0], k2=values[1], k3=values[2]))
    return result


def optimal_m(
    n: int,
    params: WeibullParams,
    coeffs: CostCoefficients,
    search_mode: SearchMode = SearchMode.EXHAUSTIVE,
    m_range: Optional[Sequence[int]] = None,
    ga_config: Optional[GAConfig] = None,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
    threads: int = 1,
) -> OptimalMResult:
    """
    Joint minimization over m and the scheme. Exhaustive mode falls back to the GA for any m whose
    CS(n, m) exceeds `budget`. Ties go to the smaller m.
    """
    if n < 1:
        raise errors.InvalidParameterError("n", n, "must be >= 1")
    candidates = sorted(set(m_range)) if m_range is not None else list(range(1, n + 1))
    if not candidates or candidates[0] < 1 or candidates[-1] > n:
        raise errors.InvalidArgumentError(f"m range must be a non-empty subset of 1..{n}, got {m_range}")

    best: Optional[Tuple[int, OptimizationResult]] = None
    profile = []
    for m in candidates:
        mode = SearchMode(search_mode)
        if mode == SearchMode.EXHAUSTIVE and count_schemes(n, m) > budget:
            logger.info(f"CS({n}, {m}) exceeds the exhaustive budget {budget}, using the GA")
            mode = SearchMode.GA
        result = optimize(n, m, params, coeffs, mode, ga_config, budget, threads)
        profile.append((m, result.best_cost))
        logger.info(f"m={m}: {result.best_scheme} -> {result.best_cost}")
        if best is None or result.best_cost < best[1].best_cost:
            best = (m, result)
    return OptimalMResult(m_star=best[0], result=best[1], profile=profile)
