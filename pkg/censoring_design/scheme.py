#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/15-下午2:20
import math
from typing import Sequence, Tuple

from pydantic import root_validator, validator

from censoring_design import errors
from censoring_design.utlis import CustomModel


class CensoringScheme(CustomModel):
    """
    Removal plan R_1..R_m for n units of which m failures are observed, an element of CS(n, m).
    """

    n: int
    m: int
    removals: Tuple[int, ...]

    @root_validator(skip_on_failure=True)
    def _check_invariants(cls, values):
        n, m, removals = values["n"], values["m"], values["removals"]
        if not 1 <= m <= n:
            raise errors.InvalidSchemeError(f"need 1 <= m <= n, got n={n}, m={m}")
        if len(removals) != m:
            raise errors.InvalidSchemeError(f"expected {m} removals, got {len(removals)}")
        if any(r < 0 for r in removals):
            raise errors.InvalidSchemeError(f"removals must be non-negative: {removals}")
        if sum(removals) != n - m:
            raise errors.InvalidSchemeError(f"removals {removals} sum to {sum(removals)}, expected n-m={n - m}")
        return values

    @classmethod
    def of(cls, n: int, m: int, removals: Sequence[int]) -> "CensoringScheme":
        return cls(n=n, m=m, removals=tuple(int(r) for r in removals))

    @property
    def gammas(self) -> Tuple[int, ...]:
        """gamma_r = m - r + 1 + sum_{i>=r} R_i, the number of units on test right before the r-th failure"""
        result = []
        remaining = self.n
        for r in self.removals:
            result.append(remaining)
            remaining -= 1 + r
        return tuple(result)

    def __str__(self):
        return f"({','.join(str(r) for r in self.removals)})"


class WeibullParams(CustomModel):
    """F(y) = 1 - exp(-(scale_rate * y) ** shape); scale_rate is a rate (1/time), the inverse of the usual scale."""

    shape: float
    scale_rate: float = 1.0

    @validator("shape", "scale_rate")
    def _positive(cls, value, field):
        if not (math.isfinite(value) and value > 0):
            raise errors.InvalidParameterError(field.name, value, "must be a positive finite number")
        return value


def count_schemes(n: int, m: int) -> int:
    if not 1 <= m <= n:
        raise errors.InvalidArgumentError(f"need 1 <= m <= n, got n={n}, m={m}")
    return math.comb(n - 1, m - 1)


def one_step_scheme(n: int, m: int, j: int) -> CensoringScheme:
    """OSC(j): every one of the n - m removals happens at the j-th failure. OSC(m) is ordinary Type-II censoring."""
    if not 1 <= j <= m:
        raise errors.InvalidArgumentError(f"one-step position must be in 1..{m}, got {j}")
    removals = [0] * m
    removals[j - 1] = n - m
    return CensoringScheme.of(n, m, removals)
