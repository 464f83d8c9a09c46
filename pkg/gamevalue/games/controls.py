import math
from enum import Enum
from typing import Any
from typing import Dict
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.exceptions import UnsupportedDimension

__all__ = [
    "ControlSetKind",
    "ControlSet",
    "ControlPoint",
    "sphere_points",
    "ball_points",
    "SHELLS",
]

SHELLS = (0.0, 0.5, 1.0)


class ControlSetKind(str, Enum):
    BALL_PRODUCT = "ball-product"
    FINITE = "finite-set"


def sphere_points(dimension: int, delta: float) -> np.ndarray:
    """
    Quasi-uniform points of the unit sphere with neighbour spacing at most delta.

    Evenly spaced angles on the circle, a Fibonacci lattice on the 2-sphere, the two endpoints on the line.
    """
    if dimension == 1:
        return np.array([[-1.0], [1.0]])
    if dimension == 2:
        count = max(4, math.ceil(2.0 * math.pi / delta))
        angles = 2.0 * math.pi * np.arange(count) / count
        return np.column_stack([np.cos(angles), np.sin(angles)])
    if dimension == 3:
        count = max(8, math.ceil(4.0 * math.pi / delta**2))
        index = np.arange(count) + 0.5
        polar = np.arccos(1.0 - 2.0 * index / count)
        azimuth = math.pi * (1.0 + math.sqrt(5.0)) * index
        return np.column_stack(
            [np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)]
        )
    raise UnsupportedDimension(f"Ball discretization supports n <= 3, got n = {dimension}.")


def ball_points(dimension: int, delta: float) -> np.ndarray:
    """
    The unit ball discretized as radial shells {0, 1/2, 1} times sphere points, the center first.
    """
    sphere = sphere_points(dimension, delta)
    shells = [np.zeros((1, dimension))] + [radius * sphere for radius in SHELLS if radius > 0]
    return np.vstack(shells)


class ControlSet(BaseModel):
    """
    A control set of pairs (primary, secondary): a product of two unit balls or the finite set {-1, 1} x {-1, 1}.
    """

    kind: ControlSetKind
    dimension: int

    model_config = ConfigDict(frozen=True)

    def components(self, delta: float) -> np.ndarray:
        """
        The discretized set of one component.
        """
        if self.kind == ControlSetKind.FINITE:
            return np.array([[-1.0], [1.0]])
        return ball_points(self.dimension, delta)

    def pairs(self, delta: float) -> Tuple[np.ndarray, np.ndarray]:
        """
        Every discretized (primary, secondary) pair as two aligned arrays.
        """
        component = self.components(delta)
        count = len(component)
        return np.repeat(component, count, axis=0), np.tile(component, (count, 1))

    def contains(self, primary: np.ndarray, secondary: np.ndarray, tolerance: float = 1e-12) -> bool:
        primary, secondary = np.asarray(primary, dtype=float), np.asarray(secondary, dtype=float)
        if self.kind == ControlSetKind.FINITE:
            return bool(np.all(np.isin(primary, (-1.0, 1.0))) and np.all(np.isin(secondary, (-1.0, 1.0))))
        return bool(np.linalg.norm(primary) <= 1.0 + tolerance and np.linalg.norm(secondary) <= 1.0 + tolerance)

    def describe(self) -> Dict[str, Any]:
        if self.kind == ControlSetKind.FINITE:
            return {"kind": self.kind.value, "elements": [-1, 1], "dimension": self.dimension, "factors": 2}
        return {"kind": self.kind.value, "radius": 1.0, "dimension": self.dimension, "factors": 2}


class ControlPoint(BaseModel):
    """
    A control u = (y, y') or v = (z, z').
    """

    primary: Tuple[float, ...]
    secondary: Tuple[float, ...]

    def belongs_to(self, control_set: ControlSet) -> bool:
        return control_set.contains(np.array(self.primary), np.array(self.secondary))
