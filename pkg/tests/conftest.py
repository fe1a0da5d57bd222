from typing import Callable

import numpy as np
import pytest

from censoring_design.cost import CostCoefficients
from censoring_design.scheme import CensoringScheme, WeibullParams
from tests.oracles import random_scheme

DEFAULT_COSTS = CostCoefficients(k1=10, k2=50, k3=250)


@pytest.fixture(scope="session")
def default_costs() -> CostCoefficients:
    return DEFAULT_COSTS


@pytest.fixture(
    scope="session",
    params=[(2.0, 1.0), (1.0, 1.0), (0.5, 1.0)],
    ids=["shape-2", "shape-1", "shape-0.5"],
)
def reference_params(request) -> WeibullParams:
    shape, scale_rate = request.param
    return WeibullParams(shape=shape, scale_rate=scale_rate)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260918)


@pytest.fixture()
def scheme_factory(rng) -> Callable[[int, int], CensoringScheme]:
    def factory(n: int, m: int) -> CensoringScheme:
        return random_scheme(rng, n, m)

    return factory
