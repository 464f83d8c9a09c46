import math
from typing import List
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

__all__ = [
    "Grid",
    "build_grid",
]


class Grid(BaseModel):
    """
    A uniform tensor grid over the comparison box [low, high]^n extended by ``pad`` nodes on every side.
    """

    n: int
    box: Tuple[float, float]
    points: int
    pad: int

    model_config = ConfigDict(frozen=True)

    @property
    def spacing(self) -> float:
        return (self.box[1] - self.box[0]) / (self.points - 1)

    @property
    def padding(self) -> float:
        return self.pad * self.spacing

    @property
    def axis(self) -> np.ndarray:
        return self.box[0] + self.spacing * np.arange(-self.pad, self.points + self.pad)

    @property
    def axes(self) -> List[np.ndarray]:
        return [self.axis] * self.n

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.points + 2 * self.pad,) * self.n

    @property
    def bounds(self) -> Tuple[float, float]:
        axis = self.axis
        return float(axis[0]), float(axis[-1])

    def mesh(self) -> np.ndarray:
        """
        The node coordinates, shape (*shape, n).
        """
        return np.stack(np.meshgrid(*self.axes, indexing="ij"), axis=-1)

    def x_max(self) -> float:
        return math.sqrt(self.n) * max(abs(bound) for bound in self.bounds)

    def comparison_mask(self, margin: float = 0.0) -> np.ndarray:
        """
        Nodes of the comparison box shrunk by margin on every side.
        """
        low, high = self.box[0] + margin, self.box[1] - margin
        tolerance = 1e-9 * self.spacing
        inside = (self.axis >= low - tolerance) & (self.axis <= high + tolerance)
        mask = np.ones(self.shape, dtype=bool)
        for dimension in range(self.n):
            view = [None] * self.n
            view[dimension] = slice(None)
            mask &= inside[tuple(view)]
        return mask


def build_grid(n: int, box: Tuple[float, float], points: int, padding: float) -> Grid:
    """
    The grid with ``points`` nodes per axis on the box and at least ``padding`` of extra room around it.
    """
    spacing = (box[1] - box[0]) / (points - 1)
    return Grid(n=n, box=box, points=points, pad=max(0, math.ceil(padding / spacing - 1e-9)))
