#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/15-下午5:02
"""
Distribution theory of a progressively Type-II censored Weibull sample.

Every quantity is a mixture over the survival powers gamma_k with weights sigma_{i-1} a_{k,i} / gamma_k.
Those weights alternate in sign; they are formed in log space, materialized in decreasing gamma order and
summed with Neumaier compensation. Columns whose cancellation is too severe for double precision are
recomputed with mpmath (see `numerics.extended_mixture_sums`).
"""
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np
from loguru import logger
from scipy.special import gammaln

from censoring_design import errors
from censoring_design.numerics import (
    SignedLogValue,
    cancellation_suspect,
    compensated_sum,
    extended_mixture_sums,
    materialize,
    working_precision,
)
from censoring_design.scheme import CensoringScheme, WeibullParams
from censoring_design.utlis import (
    EULER_GAMMA,
    PI_SQUARED_OVER_SIX,
    QUANTILE_LOG_MEAN,
    QUANTILE_LOG_SECOND_MOMENT,
)

# kernel(ln gamma_k, lib) -> value of the inner integral for that survival power; lib is numpy or mpmath
Kernel = Callable[[object, object], object]


@dataclass(frozen=True)
class CampCramerCoefficients:
    """
    gamma: gamma_1..gamma_m
    log_sigma[r]: ln sigma_r = ln prod_{i<=r+1} gamma_i (sigma is always positive)
    a_sign / a_log: sign and ln|a_{k,i}| stored at [k-1, i-1], lower triangle k <= i; a_sign is 0 elsewhere
    """

    gamma: np.ndarray
    log_sigma: np.ndarray
    a_sign: np.ndarray
    a_log: np.ndarray

    @property
    def m(self) -> int:
        return len(self.gamma)

    def coefficient(self, k: int, i: int) -> SignedLogValue:
        if not 1 <= k <= i <= self.m:
            raise errors.InvalidArgumentError(f"a_(k,i) needs 1 <= k <= i <= {self.m}, got k={k}, i={i}")
        return SignedLogValue(int(self.a_sign[k - 1, i - 1]), float(self.a_log[k - 1, i - 1]))

    def sigma(self, r: int) -> SignedLogValue:
        """sigma_r for r = 0..m-1"""
        if not 0 <= r < self.m:
            raise errors.InvalidArgumentError(f"sigma_r needs 0 <= r < {self.m}, got r={r}")
        return SignedLogValue(1, float(self.log_sigma[r]))

    def weight_logs(self) -> np.ndarray:
        """ln|sigma_{i-1} a_{k,i} / gamma_k| at [k-1, i-1]"""
        log_gamma = np.log(self.gamma.astype(np.float64))
        return self.log_sigma[None, :] + self.a_log - log_gamma[:, None]


def camp_cramer_coefficients(scheme: CensoringScheme) -> CampCramerCoefficients:
    gamma = np.asarray(scheme.gammas, dtype=np.int64)
    m = len(gamma)
    assert gamma[0] == scheme.n and np.all(np.diff(gamma) < 0), gamma
    g = gamma.astype(np.float64)
    log_gamma = np.log(g)
    # [k, j] -> ln|gamma_j - gamma_k|, zero on the diagonal so the cumulative sum skips j == k
    diff = np.abs(g[None, :] - g[:, None])
    np.fill_diagonal(diff, 1.0)
    log_diff = np.log(diff)
    a_log = -np.cumsum(log_diff, axis=1)

    index = np.arange(m)
    k_idx, i_idx = np.meshgrid(index, index, indexing="ij")
    lower = k_idx <= i_idx
    # gamma_j - gamma_k < 0 exactly for the i - k indices j in (k, i]
    a_sign = np.where(lower, np.where((i_idx - k_idx) % 2 == 0, 1, -1), 0).astype(np.int8)
    a_log = np.where(lower, a_log, 0.0)
    return CampCramerCoefficients(gamma=gamma, log_sigma=np.cumsum(log_gamma), a_sign=a_sign, a_log=a_log)


def _unit_kernel(log_gamma, lib):
    return 1.0 + 0.0 * log_gamma


def _score_kernel(log_gamma, lib):
    # int_0^inf (1 + ln(z / gamma)) e^{-z} dz
    return 1.0 - log_gamma - EULER_GAMMA


def _score_square_kernel(log_gamma, lib):
    # int_0^inf (1 + ln(z / gamma))^2 e^{-z} dz
    return (1.0 - log_gamma - EULER_GAMMA) ** 2 + PI_SQUARED_OVER_SIX


def _duration_kernel(shape: float) -> Kernel:
    def kernel(log_gamma, lib):
        return lib.exp(-log_gamma / shape)

    return kernel


def mixture_sums(coeffs: CampCramerCoefficients, kernel: Kernel, columns: Optional[np.ndarray] = None) -> np.ndarray:
    """
    sum_{k<=i} sigma_{i-1} a_{k,i} / gamma_k * kernel(ln gamma_k) for every i in `columns` (0-based, default all).
    """
    m = coeffs.m
    columns = np.arange(m) if columns is None else np.asarray(columns)
    log_gamma = np.log(coeffs.gamma.astype(np.float64))
    weights = materialize(coeffs.a_sign, coeffs.weight_logs())[:, columns]
    terms = weights * np.asarray(kernel(log_gamma, np), dtype=np.float64)[:, None]
    totals = np.atleast_1d(compensated_sum(terms, axis=0))
    absolute = np.abs(terms).sum(axis=0)
    suspects = [
        position
        for position, column in enumerate(columns)
        if cancellation_suspect(totals[position], absolute[position], int(column) + 1)
    ]
    if suspects:
        dps = max(working_precision(absolute[position], totals[position]) for position in suspects)
        refined = [int(columns[position]) + 1 for position in suspects]
        logger.debug(f"refining columns {refined} of gamma={coeffs.gamma.tolist()} at {dps} digits")
        totals[suspects] = extended_mixture_sums(coeffs.gamma, kernel, columns[suspects], dps)
    return totals


def normalization_sums(coeffs: CampCramerCoefficients) -> np.ndarray:
    """sigma_{i-1} sum_k a_{k,i} / gamma_k for every i; each equals one"""
    return mixture_sums(coeffs, _unit_kernel)


def weibull_pdf(y: float, params: WeibullParams) -> float:
    z = params.scale_rate * y
    return params.shape * params.scale_rate * z ** (params.shape - 1) * math.exp(-(z**params.shape))


def censored_order_density(y: float, i: int, coeffs: CampCramerCoefficients, params: WeibullParams) -> float:
    """Camp-Cramer density of Y_{i:m:n} at y."""
    if not 1 <= i <= coeffs.m:
        raise errors.InvalidArgumentError(f"failure index must be in 1..{coeffs.m}, got {i}")
    if not y > 0:
        raise errors.InvalidArgumentError(f"density is evaluated at positive times, got {y}")
    z = params.scale_rate * y
    cumulative_hazard = z**params.shape
    log_pdf = math.log(params.shape * params.scale_rate) + (params.shape - 1) * math.log(z) - cumulative_hazard
    gamma = coeffs.gamma[:i].astype(np.float64)
    # ln(sigma_{i-1} |a_{k,i}| (1 - F)^{gamma_k - 1} f)
    logs = coeffs.log_sigma[i - 1] + coeffs.a_log[:i, i - 1] - (gamma - 1.0) * cumulative_hazard + log_pdf
    terms = materialize(coeffs.a_sign[:i, i - 1], logs)
    return max(compensated_sum(terms), 0.0)


@dataclass(frozen=True)
class FisherInfo:
    i11: float
    i12: float
    i22: float


class FisherInverse(NamedTuple):
    i_sup_11: float
    i_sup_12: float
    i_sup_22: float


def fisher_information(
    scheme: CensoringScheme, params: WeibullParams, coeffs: Optional[CampCramerCoefficients] = None
) -> FisherInfo:
    coeffs = coeffs if coeffs is not None else camp_cramer_coefficients(scheme)
    shape, rate = params.shape, params.scale_rate
    i11 = compensated_sum(mixture_sums(coeffs, _score_square_kernel)) / shape**2
    i12 = compensated_sum(mixture_sums(coeffs, _score_kernel)) / rate
    i22 = compensated_sum(mixture_sums(coeffs, _unit_kernel)) * (shape / rate) ** 2
    return FisherInfo(i11=i11, i12=i12, i22=i22)


def invert_fisher(info: FisherInfo) -> FisherInverse:
    det = info.i11 * info.i22 - info.i12**2
    if not (math.isfinite(det) and det > 0 and info.i11 > 0 and info.i22 > 0):
        raise errors.SingularInformationError(det)
    return FisherInverse(i_sup_11=info.i22 / det, i_sup_12=-info.i12 / det, i_sup_22=info.i11 / det)


def integrated_quantile_log_variance(
    scheme: CensoringScheme, params: WeibullParams, coeffs: Optional[CampCramerCoefficients] = None
) -> float:
    """Delta-method int_0^1 Var[ln Y_p] dp."""
    inverse = invert_fisher(fisher_information(scheme, params, coeffs))
    shape, rate = params.shape, params.scale_rate
    return (
        inverse.i_sup_11 / shape**4 * QUANTILE_LOG_SECOND_MOMENT
        + 2.0 * inverse.i_sup_12 / (shape**2 * rate) * QUANTILE_LOG_MEAN
        + inverse.i_sup_22 / rate**2
    )


def expected_duration(
    scheme: CensoringScheme, params: WeibullParams, coeffs: Optional[CampCramerCoefficients] = None
) -> float:
    """E[Y_{m:m:n}], the expected length of the test."""
    coeffs = coeffs if coeffs is not None else camp_cramer_coefficients(scheme)
    last = np.array([coeffs.m - 1])
    mixture = mixture_sums(coeffs, _duration_kernel(params.shape), columns=last)[0]
    return math.exp(gammaln(1.0 + 1.0 / params.shape)) * mixture / params.scale_rate
