import itertools
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.candidates import PiecewiseForm
from gamevalue.candidates import Position
from gamevalue.conf import RefinementStep

__all__ = [
    "StratumSampler",
    "dedupe_positions",
]


def dedupe_positions(positions: List[Position]) -> List[Position]:
    """
    Keep the first occurrence of every position, preserving order.
    """
    seen: Dict[Tuple[float, ...], Position] = {}
    for p in positions:
        seen.setdefault(p.key(), p)
    return list(seen.values())


class StratumSampler(BaseModel):
    """
    Sample positions on a spatial lattice and on the abs-boundary strata through it.

    Stratum points are lattice points projected onto intersections of up to ``max_stratum_order``
    boundaries with independent normals.
    """

    form: PiecewiseForm
    box: Tuple[float, float] = (-1.0, 1.0)
    lattice_points: int = 9
    interior_times: int = 7
    max_stratum_order: int = 3

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def times(self, time_floor: float | None = None) -> np.ndarray:
        """
        Interior sample times, either strictly between the interval ends or between the floors.
        """
        frame = self.form.frame
        if time_floor is None:
            return np.linspace(frame.t0, frame.theta0, self.interior_times + 2)[1:-1]
        margin = time_floor * frame.duration
        return np.linspace(frame.t0 + margin, frame.theta0 - margin, self.interior_times)

    def lattice(self, lattice_points: int | None = None, time_floor: float | None = None) -> np.ndarray:
        """
        Lattice points as rows (t, x1, ..., xn).
        """
        n = self.form.frame.n
        axis = np.linspace(self.box[0], self.box[1], lattice_points or self.lattice_points)
        grids = np.meshgrid(self.times(time_floor), *([axis] * n), indexing="ij")
        return np.stack(grids, axis=-1).reshape(-1, n + 1)

    def strata(self, points: np.ndarray) -> np.ndarray:
        """
        Project lattice points onto every boundary intersection of the allowed orders.
        """
        frame = self.form.frame
        normals, offsets = self.form.normals, self.form.offsets
        projected = []
        for order in range(1, min(self.max_stratum_order, len(normals)) + 1):
            for subset in itertools.combinations(range(len(normals)), order):
                n_matrix = normals[list(subset)]
                if np.linalg.matrix_rank(n_matrix) < order:
                    continue
                residual = points @ n_matrix.T + offsets[list(subset)]
                correction = np.linalg.solve(n_matrix @ n_matrix.T, residual.T).T @ n_matrix
                candidates = points - correction
                inside = (
                    (candidates[:, 0] > frame.t0)
                    & (candidates[:, 0] < frame.theta0)
                    & np.all(candidates[:, 1:] >= self.box[0] - 1e-12, axis=1)
                    & np.all(candidates[:, 1:] <= self.box[1] + 1e-12, axis=1)
                )
                projected.append(candidates[inside])
        if not projected:
            return np.empty((0, frame.n + 1))
        return np.vstack(projected)

    def positions(
        self, lattice_points: int | None = None, time_floor: float | None = None
    ) -> Tuple[List[Position], int]:
        """
        Lattice and stratum positions, deduplicated.

        :return: the positions and how many of them come from the strata
        """
        points = self.lattice(lattice_points, time_floor)
        lattice = [Position.from_array(z) for z in points]
        strata = [Position.from_array(z) for z in self.strata(points)]
        positions = dedupe_positions(lattice + strata)
        stratum_count = len(positions) - len(dedupe_positions(lattice))
        logger.debug(f"Sampled {len(positions)} positions, {stratum_count} of them on boundary strata.")
        return positions, stratum_count

    def refinement_positions(self, step: RefinementStep) -> List[Position]:
        positions, _ = self.positions(lattice_points=step.lattice_points, time_floor=step.time_floor)
        return positions
