from enum import Enum
from typing import List
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.candidates import CandidateValue
from gamevalue.solvers.grid import Grid

__all__ = [
    "Scheme",
    "LevelError",
    "ErrorStats",
    "ValueField",
]


class Scheme(str, Enum):
    LAX_FRIEDRICHS = "lax-friedrichs"
    DYNAMIC_PROGRAMMING = "dynamic-programming"


class LevelError(BaseModel):
    t: float
    max_error: float
    mean_error: float
    nodes: int


class ErrorStats(BaseModel):
    """
    Errors of a value field against the analytic candidate on the comparison region.
    """

    scheme: Scheme
    points: int
    spacing: float
    dt: float
    max_error: float
    mean_error: float
    tolerance: float
    passed: bool
    levels: List[LevelError]


class ValueField(BaseModel):
    """
    Snapshots of a numerical value function, ``values[k]`` at ``times[k]`` in increasing time order.

    The comparison region of a level at time t is the box shrunk by the part of the domain of dependence
    (theta0 - t) * speed not covered by the grid padding.
    """

    scheme: Scheme
    grid: Grid
    times: List[float]
    values: np.ndarray
    dt: float
    steps: int
    dissipation: List[float] = []
    speed: float
    theta0: float
    order: str | None = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def terminal(self) -> np.ndarray:
        return self.values[-1]

    def margin(self, t: float) -> float:
        return max(0.0, (self.theta0 - t) * self.speed - self.grid.padding)

    def compare_with(self, candidate: CandidateValue, tolerance: float = 0.15) -> ErrorStats:
        """
        Compare every snapshot with the candidate on its comparison region.
        """
        mesh = self.grid.mesh()
        levels, errors = [], []
        for t, values in zip(self.times, self.values):
            mask = self.grid.comparison_mask(self.margin(t))
            if not np.any(mask):
                continue
            error = np.abs(values[mask] - candidate.evaluate_array(t, mesh[mask]))
            errors.append(error)
            levels.append(
                LevelError(t=t, max_error=float(error.max()), mean_error=float(error.mean()), nodes=int(error.size))
            )
        every = np.concatenate(errors) if errors else np.zeros(1)
        max_error = float(every.max())
        return ErrorStats(
            scheme=self.scheme,
            points=self.grid.points,
            spacing=self.grid.spacing,
            dt=self.dt,
            max_error=max_error,
            mean_error=float(every.mean()),
            tolerance=tolerance,
            passed=max_error <= tolerance,
            levels=levels,
        )

    def dump_rows(self, candidate: CandidateValue | None = None) -> Tuple[List[str], np.ndarray]:
        """
        Rows (t, x1..xn, value, analytic, abs error) of the comparison box at every snapshot.
        """
        n = self.grid.n
        mesh = self.grid.mesh()
        mask = self.grid.comparison_mask()
        points = mesh[mask]
        blocks = []
        for t, values in zip(self.times, self.values):
            numeric = values[mask]
            analytic = candidate.evaluate_array(t, points) if candidate is not None else np.full(len(points), np.nan)
            blocks.append(
                np.column_stack([np.full(len(points), t), points, numeric, analytic, np.abs(numeric - analytic)])
            )
        header = ["t", *(f"x{i}" for i in range(1, n + 1)), "value", "analytic", "abs_error"]
        return header, np.vstack(blocks)
