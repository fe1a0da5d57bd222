#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/16-上午11:40
import math
from typing import Tuple

from pydantic import root_validator, validator

from censoring_design import errors
from censoring_design.model import camp_cramer_coefficients, expected_duration, integrated_quantile_log_variance
from censoring_design.scheme import CensoringScheme, WeibullParams
from censoring_design.utlis import CustomModel


class CostCoefficients(CustomModel):
    """
    k1: cost per observed failure
    k2: cost per unit of test time
    k3: cost per unit of imprecision (integrated variance of the log quantile estimate)
    """

    k1: float
    k2: float
    k3: float

    @validator("k1", "k2", "k3")
    def _non_negative(cls, value, field):
        if not (math.isfinite(value) and value >= 0):
            raise errors.InvalidParameterError(field.name, value, "must be finite and >= 0")
        return value

    @root_validator(skip_on_failure=True)
    def _one_positive(cls, values):
        if not any(values[key] > 0 for key in ("k1", "k2", "k3")):
            raise errors.InvalidParameterError("cost coefficients", (0, 0, 0), "at least one must be positive")
        return values

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.k1, self.k2, self.k3


class CostBreakdown(CustomModel):
    failures: float
    duration: float
    imprecision: float
    expected_duration: float
    variance: float

    @property
    def total(self) -> float:
        return self.failures + self.duration + self.imprecision


def cost_breakdown(scheme: CensoringScheme, params: WeibullParams, coeffs: CostCoefficients) -> CostBreakdown:
    camp_cramer = camp_cramer_coefficients(scheme)
    duration = expected_duration(scheme, params, camp_cramer)
    variance = integrated_quantile_log_variance(scheme, params, camp_cramer)
    return CostBreakdown(
        failures=coeffs.k1 * scheme.m,
        duration=coeffs.k2 * duration,
        imprecision=coeffs.k3 * variance,
        expected_duration=duration,
        variance=variance,
    )


def total_cost(scheme: CensoringScheme, params: WeibullParams, coeffs: CostCoefficients) -> float:
    """xi(R) = k1 * m + k2 * E[Y_{m:m:n}] + k3 * int_0^1 Var[ln Y_p] dp"""
    return cost_breakdown(scheme, params, coeffs).total


def scale_transform(
    params: WeibullParams, coeffs: CostCoefficients, w: float
) -> Tuple[WeibullParams, CostCoefficients]:
    """The same problem with lifetimes measured as Y* = w * Y: rate rho / w, time cost k2 / w."""
    if not (math.isfinite(w) and w > 0):
        raise errors.InvalidParameterError("w", w, "scale factor must be positive")
    return (
        WeibullParams(shape=params.shape, scale_rate=params.scale_rate / w),
        CostCoefficients(k1=coeffs.k1, k2=coeffs.k2 / w, k3=coeffs.k3),
    )
