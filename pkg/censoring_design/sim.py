#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/20-上午10:58
"""
Monte Carlo oracle for progressively Type-II censored Weibull samples.

With Z_i ~ Exp(1) independent, E_i = sum_{r<=i} Z_r / gamma_r has the law of -ln(1 - U_{i:m:n});
inverting the Weibull cdf gives Y_{i:m:n} = E_i ** (1 / shape) / scale_rate. Each experiment costs O(m).
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np
from pydantic import validator

from censoring_design import errors
from censoring_design.scheme import CensoringScheme, WeibullParams
from censoring_design.utlis import CustomModel, SeedLike, make_rng, spawn_seeds

MIN_REPLICATIONS = 1000


class SimulatedExperiment(CustomModel):
    failure_times: Tuple[float, ...]
    scheme: CensoringScheme
    # None when the caller supplied a generator rather than a seed
    seed: Optional[int] = None

    @validator("failure_times")
    def _increasing(cls, value):
        if any(t <= 0 for t in value) or any(b <= a for a, b in zip(value, value[1:])):
            raise errors.InvalidArgumentError(f"failure times must be positive and strictly increasing: {value}")
        return value


def simulate_experiments(
    scheme: CensoringScheme,
    params: WeibullParams,
    replications: int,
    seed: Optional[SeedLike] = None,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """(replications, m) matrix of failure times, one simulated experiment per row."""
    if replications < 1:
        raise errors.InvalidParameterError("replications", replications, "must be >= 1")
    rng = rng if rng is not None else make_rng(seed)
    gamma = np.asarray(scheme.gammas, dtype=np.float64)
    spacings = rng.standard_exponential(size=(replications, scheme.m)) / gamma
    return np.cumsum(spacings, axis=1) ** (1.0 / params.shape) / params.scale_rate


def generate_experiment(
    scheme: CensoringScheme, params: WeibullParams, rng: Union[np.random.Generator, int]
) -> SimulatedExperiment:
    seed = None
    if not isinstance(rng, np.random.Generator):
        seed, rng = int(rng), make_rng(int(rng))
    times = simulate_experiments(scheme, params, 1, rng=rng)[0]
    return SimulatedExperiment(failure_times=tuple(float(t) for t in times), scheme=scheme, seed=seed)


class _Moments(NamedTuple):
    count: int
    mean: float
    m2: float

    def merge(self, other: "_Moments") -> "_Moments":
        """Chan et al. pairwise update of count, mean and sum of squared deviations."""
        if self.count == 0:
            return other
        if other.count == 0:
            return self
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * other.count / count
        m2 = self.m2 + other.m2 + delta * delta * self.count * other.count / count
        return _Moments(count, mean, m2)


def _duration_moments(scheme: CensoringScheme, params: WeibullParams, replications: int, seed) -> _Moments:
    if replications == 0:
        return _Moments(0, 0.0, 0.0)
    durations = simulate_experiments(scheme, params, replications, seed=seed)[:, -1]
    mean = float(durations.mean())
    return _Moments(replications, mean, float(np.square(durations - mean).sum()))


def monte_carlo_duration(
    scheme: CensoringScheme,
    params: WeibullParams,
    replications: int,
    seed: SeedLike,
    workers: int = 1,
) -> Tuple[float, float]:
    """Sample mean and standard error of Y_{m:m:n}. Worker w simulates with the w-th spawned child of `seed`."""
    if replications < MIN_REPLICATIONS:
        raise errors.InvalidParameterError("replications", replications, f"must be >= {MIN_REPLICATIONS}")
    if workers < 1:
        raise errors.InvalidParameterError("workers", workers, "must be >= 1")
    shares = [len(part) for part in np.array_split(np.arange(replications), workers)]
    seeds = spawn_seeds(seed, workers)
    if workers == 1:
        parts = [_duration_moments(scheme, params, shares[0], seeds[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _duration_moments(scheme, params, *job), zip(shares, seeds)))
    total = _Moments(0, 0.0, 0.0)
    for part in parts:
        total = total.merge(part)
    variance = total.m2 / (total.count - 1)
    return total.mean, math.sqrt(variance / total.count)
