#!/usr/bin/env python3
# encoding : utf-8
# create at: 2026/9/21-上午11:20
import enum
import pathlib
from typing import Any, Dict, List, Optional, Tuple

import tomlkit
from pydantic import root_validator, validator
from tomlkit.exceptions import TOMLKitError

from censoring_design import errors
from censoring_design.analysis import SearchMode
from censoring_design.cost import CostCoefficients
from censoring_design.genetic import GAConfig
from censoring_design.notation import parse_scheme_notation
from censoring_design.scheme import CensoringScheme, WeibullParams
from censoring_design.utlis import DEFAULT_COST_COEFFICIENTS, DEFAULT_EXHAUSTIVE_BUDGET, CustomModel


class Command(str, enum.Enum):
    EVALUATE = "evaluate"
    OPTIMIZE = "optimize"
    EXHAUSTIVE = "exhaustive"
    BASELINE = "baseline"
    SENSITIVITY_SHAPE = "sensitivity-shape"
    SENSITIVITY_COST = "sensitivity-cost"
    OPTIMAL_M = "optimal-m"
    COMPARE = "compare"
    SIMULATE = "simulate"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"
    TABLE = "table"


GA_KEYS = tuple(name for name in GAConfig.__fields__ if name != "seed")
SCHEME_COMMANDS = (Command.EVALUATE, Command.SIMULATE)


class RunConfig(CustomModel):
    command: Command
    n: Optional[int] = None
    m: Optional[int] = None
    shape: float = 1.0
    scale_rate: float = 1.0
    k1: float = DEFAULT_COST_COEFFICIENTS[0]
    k2: float = DEFAULT_COST_COEFFICIENTS[1]
    k3: float = DEFAULT_COST_COEFFICIENTS[2]
    ga: GAConfig = GAConfig()
    scheme: Optional[CensoringScheme] = None
    output_format: OutputFormat = OutputFormat.CSV
    seed: int = 0
    threads: int = 1
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET
    search_mode: SearchMode = SearchMode.EXHAUSTIVE
    min_m: Optional[int] = None
    max_m: Optional[int] = None
    replications: int = 100_000
    max_iters: int = 1000
    # sensitivity-shape: true shape (defaults to `shape`) and the misspecified values
    phi0: Optional[float] = None
    phis: Optional[List[float]] = None
    # sensitivity-cost: explicit coefficient triples, or +-delta on each coefficient in turn
    costs: Optional[List[Tuple[float, float, float]]] = None
    deltas: List[float] = [1.0, 2.0, 3.0]
    progress: bool = False

    @root_validator(pre=True)
    def _parse_scheme(cls, values):
        scheme = values.get("scheme")
        if isinstance(scheme, str):
            n, m = values.get("n"), values.get("m")
            if n is None or m is None:
                raise errors.InvalidArgumentError("scheme notation needs both n and m")
            values["scheme"] = parse_scheme_notation(scheme, int(n), int(m))
        return values

    @validator("threads", "budget", "max_iters")
    def _positive(cls, value, field):
        if value < 1:
            raise errors.InvalidParameterError(field.name, value, "must be >= 1")
        return value

    @validator("seed")
    def _unsigned_64(cls, value, field):
        if not 0 <= value < 2**64:
            raise errors.InvalidParameterError(field.name, value, "must be a 64-bit unsigned integer")
        return value

    @root_validator(skip_on_failure=True)
    def _command_fields(cls, values):
        command, n, m = values["command"], values["n"], values["m"]
        if n is None:
            raise errors.InvalidArgumentError(f"{command.value} needs n")
        if m is None and command != Command.OPTIMAL_M:
            raise errors.InvalidArgumentError(f"{command.value} needs m")
        if not 1 <= n or (m is not None and not 1 <= m <= n):
            raise errors.InvalidArgumentError(f"need 1 <= m <= n, got n={n}, m={m}")
        scheme = values["scheme"]
        if scheme is None and command in SCHEME_COMMANDS:
            raise errors.InvalidArgumentError(f"{command.value} needs a scheme")
        if scheme is not None and (scheme.n, scheme.m) != (n, m):
            raise errors.InvalidArgumentError(f"scheme {scheme} is not in CS({n}, {m})")
        WeibullParams(shape=values["shape"], scale_rate=values["scale_rate"])
        CostCoefficients(k1=values["k1"], k2=values["k2"], k3=values["k3"])
        return values

    @property
    def params(self) -> WeibullParams:
        return WeibullParams(shape=self.shape, scale_rate=self.scale_rate)

    @property
    def coefficients(self) -> CostCoefficients:
        return CostCoefficients(k1=self.k1, k2=self.k2, k3=self.k3)

    @property
    def m_range(self) -> List[int]:
        return list(range(self.min_m or 1, (self.max_m or self.n) + 1))


FILE_KEYS = frozenset(name for name in RunConfig.__fields__ if name not in ("command", "ga")) | frozenset(GA_KEYS)


def load_config_file(path: pathlib.Path) -> Dict[str, Any]:
    """Flat TOML key/value file; keys mirror RunConfig fields, GA settings are flat top-level keys."""
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise errors.ConfigFileError(path, f"cannot be read: {e}")
    try:
        values = tomlkit.parse(text).unwrap()
    except TOMLKitError as e:
        raise errors.ConfigFileError(path, f"is not valid TOML: {e}")
    unknown = sorted(set(values) - FILE_KEYS)
    if unknown:
        raise errors.ConfigFileError(path, f"unknown keys {unknown}")
    nested = sorted(key for key, value in values.items() if isinstance(value, dict))
    if nested:
        raise errors.ConfigFileError(path, f"tables are not supported, found {nested}")
    return values


def build_run_config(
    command: Command, file_values: Optional[Dict[str, Any]] = None, flags: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """defaults < config file < explicit flags; a flag left at None does not override the file."""
    merged: Dict[str, Any] = dict(file_values or {})
    merged.update({key: value for key, value in (flags or {}).items() if value is not None})
    ga = {key: merged.pop(key) for key in GA_KEYS if key in merged}
    ga["seed"] = merged.get("seed", 0)
    return RunConfig(command=command, ga=ga, **merged)
