#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/14-下午4:36
from typing import Optional


class CensoringDesignError(Exception):
    exit_code: int = 3


class InvalidArgumentError(CensoringDesignError):
    exit_code = 2

    def __init__(self, message: str):
        super(InvalidArgumentError, self).__init__(message)


class InvalidSchemeError(InvalidArgumentError):
    def __init__(self, reason: str):
        super(InvalidSchemeError, self).__init__(f"invalid censoring scheme: {reason}")


class InvalidParameterError(InvalidArgumentError):
    def __init__(self, name: str, value: object, reason: str):
        self.name = name
        super(InvalidParameterError, self).__init__(f"invalid {name}={value!r}: {reason}")


class SchemeNotationError(InvalidArgumentError):
    def __init__(self, token: str, reason: str):
        self.token = token
        super(SchemeNotationError, self).__init__(f"cannot parse scheme token {token!r}: {reason}")


class ConfigFileError(InvalidArgumentError):
    def __init__(self, path: object, reason: str):
        super(ConfigFileError, self).__init__(f"config file {path}: {reason}")


class SingularInformationError(CensoringDesignError):
    def __init__(self, determinant: Optional[float] = None):
        self.determinant = determinant
        super(SingularInformationError, self).__init__(
            f"fisher information matrix is singular or non-finite (det={determinant})"
        )


class OptimizationFailedError(CensoringDesignError):
    def __init__(self, generation: int):
        self.generation = generation
        super(OptimizationFailedError, self).__init__(
            f"every individual failed evaluation in generation {generation}"
        )


class InstanceTooLargeError(CensoringDesignError):
    exit_code = 4

    def __init__(self, n: int, m: int, count: int, budget: int):
        self.count = count
        self.budget = budget
        super(InstanceTooLargeError, self).__init__(
            f"CS({n}, {m}) holds {count} schemes, exhaustive budget is {budget}"
        )
