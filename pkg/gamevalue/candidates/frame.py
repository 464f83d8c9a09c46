from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import model_validator

from gamevalue.exceptions import DimensionMismatch
from gamevalue.exceptions import OutsideTimeInterval

__all__ = [
    "GameFrame",
    "Position",
]


class GameFrame(BaseModel):
    """
    Spatial dimension and time interval of a game.
    """

    n: int = Field(ge=1)
    t0: float = 0.0
    theta0: float = 1.0

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def check_interval(self) -> "GameFrame":
        if not self.t0 < self.theta0:
            raise ValueError(f"t0 must be smaller than theta0, got [{self.t0}, {self.theta0}].")
        return self

    @property
    def duration(self) -> float:
        return self.theta0 - self.t0

    def contains_time(self, t: float, strict: bool = False) -> bool:
        """
        Check if a time lies in the interval.

        :param t: the time
        :param strict: require the open interval
        """
        if strict:
            return self.t0 < t < self.theta0
        return self.t0 <= t <= self.theta0

    def check_position(self, p: "Position") -> None:
        """
        Raise if a position does not belong to the frame.

        :param p: the position
        :raises DimensionMismatch: x does not have n coordinates
        :raises OutsideTimeInterval: t is outside [t0, theta0]
        """
        if len(p.x) != self.n:
            raise DimensionMismatch(f"{p} has {len(p.x)} spatial coordinates, the game has n = {self.n}.")
        if not self.contains_time(p.t):
            raise OutsideTimeInterval(f"t={p.t} is outside [{self.t0}, {self.theta0}].")


class Position(BaseModel):
    """
    A point (t, x) of the game space.
    """

    t: float
    x: Tuple[float, ...]

    model_config = ConfigDict(frozen=True)

    @classmethod
    def of(cls, t: float, *x: float) -> "Position":
        return cls(t=float(t), x=tuple(float(value) for value in x))

    @classmethod
    def from_array(cls, z: np.ndarray) -> "Position":
        """
        Build a position from a (t, x1, ..., xn) vector.
        """
        return cls(t=float(z[0]), x=tuple(float(value) for value in z[1:]))

    def as_array(self) -> np.ndarray:
        return np.array((self.t, *self.x), dtype=float)

    @property
    def spatial(self) -> np.ndarray:
        return np.array(self.x, dtype=float)

    def key(self, digits: int = 12) -> Tuple[float, ...]:
        """
        Rounded coordinates used to deduplicate positions.
        """
        return tuple(round(value, digits) + 0.0 for value in (self.t, *self.x))
