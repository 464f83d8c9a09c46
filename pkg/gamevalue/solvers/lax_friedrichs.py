import math
from typing import List
from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from gamevalue.candidates import CandidateValue
from gamevalue.conf import GridSettings
from gamevalue.exceptions import CFLViolation
from gamevalue.exceptions import NonFiniteValue
from gamevalue.hamiltonians import HamiltonianModel
from gamevalue.solvers.field import ErrorStats
from gamevalue.solvers.field import Scheme
from gamevalue.solvers.field import ValueField
from gamevalue.solvers.grid import build_grid
from gamevalue.solvers.terminal import TerminalPayoff

__all__ = [
    "solve_lf",
    "snapshot_levels",
    "time_step",
    "RefinementRow",
    "RefinementTable",
    "refinement_table",
]


def _differences(values: np.ndarray, spacing: float) -> List[Tuple[np.ndarray, np.ndarray]]:
    """
    Forward and backward differences per axis, one-sided at the grid edges.
    """
    result = []
    for axis in range(values.ndim):
        inner = np.diff(values, axis=axis) / spacing
        first = np.take(inner, [0], axis=axis)
        last = np.take(inner, [-1], axis=axis)
        result.append((np.concatenate([inner, last], axis=axis), np.concatenate([first, inner], axis=axis)))
    return result


def snapshot_levels(steps: int, snapshots: int) -> List[int]:
    return sorted({int(level) for level in np.round(np.linspace(0, steps, min(snapshots, steps + 1)))})


def time_step(duration: float, rate: float, settings: GridSettings) -> Tuple[float, int]:
    """
    The uniform step dividing the interval with dt * rate <= cfl.
    """
    if settings.dt is not None:
        if settings.dt * rate > settings.cfl * (1.0 + 1e-12):
            raise CFLViolation(
                f"dt={settings.dt} gives a CFL number {settings.dt * rate:.4g} above {settings.cfl}."
            )
        target = settings.dt
    else:
        target = settings.cfl / rate if rate > 0 else duration
    steps = max(1, math.ceil(duration / target - 1e-9))
    return duration / steps, steps


def solve_lf(
    hamiltonian: HamiltonianModel,
    terminal: TerminalPayoff,
    box: Tuple[float, float] = (-1.0, 1.0),
    settings: GridSettings | None = None,
) -> ValueField:
    """
    March the Lax-Friedrichs scheme backward from theta0:
    V(t - dt) = V(t) + dt [H(t, x, (D+ + D-) / 2) + sum_i alpha (D+_i - D-_i) / 2].

    :param hamiltonian: the Hamiltonian
    :param terminal: the terminal payoff
    :param box: the comparison box
    :param settings: grid, CFL and snapshot settings
    :return: the snapshots of the value field
    """
    settings = settings or GridSettings()
    frame = hamiltonian.frame
    n = frame.n
    speed = hamiltonian.axis_speed(math.sqrt(n) * max(abs(box[0]), abs(box[1])))
    padding = settings.padding if settings.padding is not None else frame.duration * speed
    grid = build_grid(n, box, settings.points, padding)
    alpha = hamiltonian.axis_speed(grid.x_max())
    spacing = grid.spacing
    dt, steps = time_step(frame.duration, n * alpha / spacing, settings)
    logger.info(
        f"Lax-Friedrichs on {grid.shape} nodes, spacing {spacing:.4g}, dt {dt:.4g}, {steps} steps, alpha {alpha:.4g}."
    )

    mesh = grid.mesh()
    values = terminal(mesh)
    keep = set(snapshot_levels(steps, settings.snapshots))
    snapshots = {steps: values.copy()}
    for level in range(steps, 0, -1):
        t = frame.t0 + level * dt
        differences = _differences(values, spacing)
        average = np.stack([(forward + backward) / 2.0 for forward, backward in differences], axis=-1)
        dissipation = sum(alpha * (forward - backward) / 2.0 for forward, backward in differences)
        values = values + dt * (np.broadcast_to(hamiltonian.evaluate(t, mesh, average), values.shape) + dissipation)
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue(f"Non-finite value at level {level - 1} (t = {t - dt:.6g}).")
        if level - 1 in keep:
            snapshots[level - 1] = values.copy()
        logger.debug(f"Level {level - 1}: values in [{values.min():.4g}, {values.max():.4g}].")

    levels = sorted(snapshots)
    return ValueField(
        scheme=Scheme.LAX_FRIEDRICHS,
        grid=grid,
        times=[frame.t0 + level * dt for level in levels],
        values=np.stack([snapshots[level] for level in levels]),
        dt=dt,
        steps=steps,
        dissipation=[alpha] * n,
        speed=speed,
        theta0=frame.theta0,
    )


class RefinementRow(BaseModel):
    points: int
    spacing: float
    max_error: float
    mean_error: float


class RefinementTable(BaseModel):
    """
    Errors of two runs, the second at half the spacing.
    """

    rows: List[RefinementRow]
    gain: float

    @property
    def improving(self) -> bool:
        return self.rows[-1].max_error < self.rows[0].max_error


def refinement_table(
    hamiltonian: HamiltonianModel,
    terminal: TerminalPayoff,
    candidate: CandidateValue,
    box: Tuple[float, float] = (-1.0, 1.0),
    settings: GridSettings | None = None,
    coarse: ErrorStats | None = None,
) -> Tuple[RefinementTable, List[ErrorStats]]:
    """
    Run the scheme at the configured resolution and at half its spacing.

    :param coarse: the errors of an earlier run at the configured resolution, reused when given
    """
    settings = settings or GridSettings()
    rows, stats = [], []
    for points in (settings.points, 2 * settings.points - 1):
        if coarse is not None and points == settings.points:
            errors = coarse
        else:
            refined = settings.model_copy(update={"points": points, "dt": None})
            errors = solve_lf(hamiltonian, terminal, box, refined).compare_with(candidate, settings.tolerance)
        stats.append(errors)
        rows.append(
            RefinementRow(
                points=points, spacing=errors.spacing, max_error=errors.max_error, mean_error=errors.mean_error
            )
        )
    gain = rows[0].max_error / rows[1].max_error if rows[1].max_error > 0 else math.inf
    logger.info(f"Refinement {settings.points} -> {rows[1].points}: max error gain {gain:.3g}.")
    return RefinementTable(rows=rows, gain=gain), stats
