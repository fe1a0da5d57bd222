#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/17-下午3:05
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from loguru import logger
from tqdm import tqdm

from censoring_design import errors
from censoring_design.cost import CostCoefficients, total_cost
from censoring_design.scheme import CensoringScheme, WeibullParams, count_schemes
from censoring_design.utlis import DEFAULT_EXHAUSTIVE_BUDGET, CustomModel

Removals = Tuple[int, ...]


class OptimizationResult(CustomModel):
    best_scheme: CensoringScheme
    best_cost: float
    generations_run: int
    history: List[Tuple[int, float]]
    evaluations: int


def iter_compositions(total: int, parts: int) -> Iterator[Removals]:
    """Compositions of `total` into `parts` non-negative parts, largest leading part first."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in iter_compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_schemes(n: int, m: int) -> Iterator[CensoringScheme]:
    count_schemes(n, m)
    for removals in iter_compositions(n - m, m):
        yield CensoringScheme(n=n, m=m, removals=removals)


class SchemeEvaluator:
    """
    Memoized total cost keyed by removal vector.
    A scheme whose information matrix is singular costs +inf instead of aborting the search.
    `threads` > 1 evaluates cache misses concurrently; `map` keeps input order so results never depend on it.
    """

    def __init__(
        self,
        n: int,
        m: int,
        params: WeibullParams,
        coeffs: CostCoefficients,
        threads: int = 1,
    ):
        self.n = n
        self.m = m
        self.params = params
        self.coeffs = coeffs
        self.threads = max(1, threads)
        self._cache: Dict[Removals, float] = {}

    @property
    def evaluations(self) -> int:
        return len(self._cache)

    def _evaluate(self, removals: Removals) -> float:
        assert len(removals) == self.m and sum(removals) == self.n - self.m and min(removals) >= 0, removals
        scheme = CensoringScheme(n=self.n, m=self.m, removals=removals)
        try:
            return total_cost(scheme, self.params, self.coeffs)
        except errors.SingularInformationError as e:
            logger.warning(f"scheme {scheme} skipped: {e}")
            return math.inf

    def cost(self, removals: Removals) -> float:
        removals = tuple(int(r) for r in removals)
        if removals not in self._cache:
            self._cache[removals] = self._evaluate(removals)
        return self._cache[removals]

    def costs(self, batch: Sequence[Removals]) -> List[float]:
        batch = [tuple(int(r) for r in removals) for removals in batch]
        missing = list(dict.fromkeys(removals for removals in batch if removals not in self._cache))
        if missing:
            if self.threads > 1 and len(missing) > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    values = list(pool.map(self._evaluate, missing))
            else:
                values = [self._evaluate(removals) for removals in missing]
            self._cache.update(zip(missing, values))
        return [self._cache[removals] for removals in batch]

    def scheme(self, removals: Removals) -> CensoringScheme:
        return CensoringScheme(n=self.n, m=self.m, removals=tuple(removals))


def exhaustive_optimum(
    n: int,
    m: int,
    params: WeibullParams,
    coeffs: CostCoefficients,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
    progress: bool = False,
    threads: int = 1,
) -> OptimizationResult:
    """Evaluate every scheme of CS(n, m); ties go to the lexicographically smallest removal vector."""
    count = count_schemes(n, m)
    if count > budget:
        raise errors.InstanceTooLargeError(n, m, count, budget)
    logger.info(f"exhaustive search over CS({n}, {m}): {count} schemes")
    evaluator = SchemeEvaluator(n, m, params, coeffs, threads=threads)
    best: Optional[Removals] = None
    best_cost = math.inf
    compositions = tqdm(iter_compositions(n - m, m), total=count, disable=not progress, desc=f"CS({n},{m})")
    chunk: List[Removals] = []

    def consume(batch: List[Removals]):
        nonlocal best, best_cost
        for removals, cost in zip(batch, evaluator.costs(batch)):
            if cost < best_cost or (cost == best_cost and best is not None and removals < best):
                best, best_cost = removals, cost

    for removals in compositions:
        chunk.append(removals)
        if len(chunk) >= 256:
            consume(chunk)
            chunk = []
    consume(chunk)
    if best is None or not math.isfinite(best_cost):
        raise errors.OptimizationFailedError(0)
    return OptimizationResult(
        best_scheme=evaluator.scheme(best),
        best_cost=best_cost,
        generations_run=0,
        history=[(0, best_cost)],
        evaluations=evaluator.evaluations,
    )


def unit_moves(removals: Removals) -> Iterator[Removals]:
    """Neighbours reached by moving one removal unit from position i to position j != i."""
    for i, source in enumerate(removals):
        if source == 0:
            continue
        for j in range(len(removals)):
            if j == i:
                continue
            neighbour = list(removals)
            neighbour[i] -= 1
            neighbour[j] += 1
            yield tuple(neighbour)


def local_search_baseline(
    n: int,
    m: int,
    params: WeibullParams,
    coeffs: CostCoefficients,
    start: CensoringScheme,
    max_iters: int = 1000,
    threads: int = 1,
) -> OptimizationResult:
    """Steepest descent over unit moves; stops at a local minimum or after `max_iters` moves."""
    if (start.n, start.m) != (n, m):
        raise errors.InvalidArgumentError(f"start scheme belongs to CS({start.n}, {start.m}), not CS({n}, {m})")
    evaluator = SchemeEvaluator(n, m, params, coeffs, threads=threads)
    current = start.removals
    current_cost = evaluator.cost(current)
    history = [(0, current_cost)]
    iteration = 0
    while iteration < max_iters:
        neighbours = list(unit_moves(current))
        if not neighbours:
            break
        costs = evaluator.costs(neighbours)
        best_index = min(range(len(neighbours)), key=lambda index: costs[index])
        if not costs[best_index] < current_cost:
            break
        current, current_cost = neighbours[best_index], costs[best_index]
        iteration += 1
        history.append((iteration, current_cost))
        logger.debug(f"descent step {iteration}: {current} -> {current_cost}")
    if not math.isfinite(current_cost):
        raise errors.OptimizationFailedError(iteration)
    return OptimizationResult(
        best_scheme=evaluator.scheme(current),
        best_cost=current_cost,
        generations_run=iteration,
        history=history,
        evaluations=evaluator.evaluations,
    )
