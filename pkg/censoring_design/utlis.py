import math
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel

EULER_GAMMA: float = 0.57721566490153286
PI_SQUARED_OVER_SIX: float = math.pi**2 / 6.0
# A1 = int_0^1 ln(-ln(1-p)) dp, A2 = int_0^1 ln(-ln(1-p))^2 dp
QUANTILE_LOG_MEAN: float = -EULER_GAMMA
QUANTILE_LOG_SECOND_MOMENT: float = EULER_GAMMA**2 + PI_SQUARED_OVER_SIX

DEFAULT_EXHAUSTIVE_BUDGET: int = 10_000_000
DEFAULT_COST_COEFFICIENTS = (10.0, 50.0, 250.0)

SeedLike = Union[int, np.random.SeedSequence]


def make_rng(seed: Optional[SeedLike] = None) -> np.random.Generator:
    """
    One Philox (counter-based) stream per run.
    Workers that need their own stream take `spawn_seeds(seed, count)` children instead of offsetting seeds.
    """
    return np.random.Generator(np.random.Philox(seed))


def spawn_seeds(seed: SeedLike, count: int) -> list:
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return seed.spawn(count)


class CustomModel(BaseModel):
    class Config:
        frozen = True
        extra = "forbid"
        json_encoders = {np.floating: float, np.integer: int}

    def json(self, *args, **kwargs):
        if kwargs.get("by_alias") is None:
            kwargs["by_alias"] = True
        return super(CustomModel, self).json(*args, **kwargs)
