#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/15-上午10:12
"""
Sign tracking in log space and compensated summation.

Camp-Cramer coefficients alternate in sign and their raw magnitudes overflow or cancel for large n, m.
They are carried as (sign, ln|value|) pairs and only materialized right before a compensated sum.
"""
import math
from dataclasses import dataclass
from typing import List, Sequence

import mpmath
import numpy as np

EPS = float(np.finfo(np.float64).eps)
# relative accuracy wanted from a double-precision alternating sum before it is recomputed with mpmath
REFINE_TOLERANCE = 1e-9
MAX_WORKING_DPS = 120


@dataclass(frozen=True)
class SignedLogValue:
    sign: int
    log_magnitude: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")

    @classmethod
    def from_float(cls, value: float) -> "SignedLogValue":
        if value == 0:
            return cls(0, 0.0)
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    def materialize(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue(0, 0.0)
        return SignedLogValue(self.sign * other.sign, self.log_magnitude + other.log_magnitude)

    def __float__(self) -> float:
        return self.materialize()


def two_sum(a, b):
    """Error free transformation: a + b == s + t exactly."""
    s = a + b
    bb = s - a
    t = (a - (s - bb)) + (b - bb)
    return s, t


def compensated_sum(values, axis: int = 0):
    """
    Neumaier summation along `axis`, visiting elements in index order.
    Works on scalars per slice, so a 2-d array summed along axis 0 gives one compensated sum per column.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim == 0:
        return float(values)
    values = np.moveaxis(values, axis, 0)
    total = np.zeros(values.shape[1:])
    carry = np.zeros(values.shape[1:])
    for row in values:
        total, err = two_sum(total, row)
        carry = carry + err
    result = total + carry
    if result.ndim == 0:
        return float(result)
    return result


def materialize(signs: np.ndarray, log_magnitudes: np.ndarray) -> np.ndarray:
    signs = np.asarray(signs)
    out = np.zeros(np.shape(log_magnitudes))
    nonzero = signs != 0
    out[nonzero] = signs[nonzero] * np.exp(np.asarray(log_magnitudes)[nonzero])
    return out


def cancellation_suspect(total: float, absolute_total: float, terms: int) -> bool:
    """True when rounding in `terms` materialized terms may exceed REFINE_TOLERANCE relative to |total|."""
    bound = absolute_total * 16.0 * max(terms, 1) * EPS
    return bound > REFINE_TOLERANCE * abs(total)


def working_precision(absolute_total: float, total: float) -> int:
    ratio = absolute_total / max(abs(total), 1e-300)
    return min(30 + max(0, int(math.ceil(math.log10(max(ratio, 1.0))))), MAX_WORKING_DPS)


def extended_mixture_sums(gammas: Sequence[int], kernel, columns: Sequence[int], dps: int) -> List[float]:
    """
    sum_k sigma_{i-1} a_{k,i} / gamma_k * kernel(ln gamma_k) for each 0-based column i, with mpmath at `dps` digits.

    The weight of gamma_k in column i is prod_{j<=i, j!=k} gamma_j / (gamma_j - gamma_k); one pass over i updates
    every weight with its new factor. `kernel` receives an mpf log and the mpmath context it lives in.
    Runs in a private context and leaves the global mpmath.mp precision untouched.
    """
    wanted = set(int(column) for column in columns)
    last = max(wanted)
    results = {}
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    values = [ctx.mpf(int(g)) for g in gammas[: last + 1]]
    kernel_values = [kernel(ctx.log(g), ctx) for g in values]
    weights = []
    for i, g_i in enumerate(values):
        newest = ctx.mpf(1)
        for k in range(i):
            weights[k] *= g_i / (g_i - values[k])
            newest *= values[k] / (values[k] - g_i)
        weights.append(newest)
        if i in wanted:
            results[i] = float(ctx.fsum(w * v for w, v in zip(weights, kernel_values)))
    return [results[int(column)] for column in columns]
