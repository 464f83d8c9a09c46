import math
from typing import Literal
from typing import Tuple

import numpy as np
from loguru import logger
from scipy.interpolate import RegularGridInterpolator

from gamevalue.conf import GridSettings
from gamevalue.exceptions import NonFiniteValue
from gamevalue.exceptions import PaddingExceeded
from gamevalue.games import GameDynamics
from gamevalue.games import GameKind
from gamevalue.solvers.field import Scheme
from gamevalue.solvers.field import ValueField
from gamevalue.solvers.grid import build_grid
from gamevalue.solvers.lax_friedrichs import snapshot_levels
from gamevalue.solvers.terminal import TerminalPayoff

__all__ = [
    "solve_dp",
    "velocity_bound",
]

DEFAULT_STEPS = 100
WORK_WARNING = 1e8


def velocity_bound(game: GameDynamics, box: Tuple[float, float], delta: float) -> float:
    """
    The largest |f| over the comparison box corners and centre and the discretized controls.
    """
    n = game.n
    corners = np.stack(np.meshgrid(*[np.array([box[0], 0.0, box[1]])] * n, indexing="ij"), axis=-1).reshape(-1, n)
    y, y_secondary = game.p.pairs(delta)
    z, z_secondary = game.q.pairs(delta)
    velocity = game.velocity(
        game.hamiltonian.frame.theta0,
        corners[:, None, None, :],
        y[None, None, :, :],
        y_secondary[None, None, :, :],
        z[None, :, None, :],
        z_secondary[None, :, None, :],
    )
    return float(np.max(np.linalg.norm(velocity, axis=-1)))


def solve_dp(
    game: GameDynamics,
    terminal: TerminalPayoff,
    box: Tuple[float, float] = (-1.0, 1.0),
    settings: GridSettings | None = None,
    delta: float = 0.5,
    order: Literal["maxmin", "minmax"] | None = None,
) -> ValueField:
    """
    Grid dynamic programming V(t)(x) = opt_v opt_u V(t + dt)(x + dt f(t, x, u, v)).

    Off-grid values are multilinear interpolations, clamped to the grid. The max-min order is used for the
    max-min and the Isaacs games unless ``order`` says otherwise.

    :param game: the dynamics
    :param terminal: the terminal payoff
    :param box: the comparison box
    :param settings: grid and snapshot settings, ``dt`` defaults to a hundredth of the interval
    :param delta: the sphere spacing of ball control sets
    :param order: the order of the optimization
    :return: the snapshots of the value field
    """
    settings = settings or GridSettings()
    frame = game.hamiltonian.frame
    n = frame.n
    order = order or ("minmax" if game.kind == GameKind.MINMAX else "maxmin")
    speed = velocity_bound(game, box, delta)
    padding = settings.padding if settings.padding is not None else frame.duration * speed
    grid = build_grid(n, box, settings.points, padding)
    steps = max(1, math.ceil(frame.duration / settings.dt - 1e-9)) if settings.dt else DEFAULT_STEPS
    dt = frame.duration / steps

    y, y_secondary = game.p.pairs(delta)
    z, z_secondary = game.q.pairs(delta)
    mesh = grid.mesh()
    nodes = mesh.reshape(-1, n)
    work = len(nodes) * len(y) * len(z)
    if work > WORK_WARNING:
        logger.warning(f"Dynamic programming evaluates {work:.3g} control pairs per step: use a coarser delta.")
    logger.info(
        f"Dynamic programming ({order}) on {grid.shape} nodes, {len(y)} x {len(z)} controls, "
        f"dt {dt:.4g}, {steps} steps."
    )

    inside = grid.comparison_mask().reshape(-1)
    low, high = grid.bounds
    values = terminal(mesh)
    keep = set(snapshot_levels(steps, settings.snapshots))
    snapshots = {steps: values.copy()}
    for level in range(steps - 1, -1, -1):
        t = frame.t0 + level * dt
        velocity = game.velocity(
            t,
            nodes[:, None, None, :],
            y[None, None, :, :],
            y_secondary[None, None, :, :],
            z[None, :, None, :],
            z_secondary[None, :, None, :],
        )
        queries = nodes[:, None, None, :] + dt * velocity
        escaped = np.any((queries < low) | (queries > high), axis=(1, 2, 3)) & inside
        if np.any(escaped):
            raise PaddingExceeded(
                f"A step from the comparison box leaves the grid at level {level}: enlarge the padding above "
                f"{grid.padding:.4g}."
            )
        interpolate = RegularGridInterpolator(grid.axes, values, method="linear")
        payoff = interpolate(np.clip(queries, low, high).reshape(-1, n)).reshape(queries.shape[:-1])
        if order == "maxmin":
            optimum = payoff.min(axis=2).max(axis=1)
        else:
            optimum = payoff.max(axis=1).min(axis=1)
        values = optimum.reshape(grid.shape)
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue(f"Non-finite value at level {level} (t = {t:.6g}).")
        if level in keep:
            snapshots[level] = values.copy()

    levels = sorted(snapshots)
    return ValueField(
        scheme=Scheme.DYNAMIC_PROGRAMMING,
        grid=grid,
        times=[frame.t0 + level * dt for level in levels],
        values=np.stack([snapshots[level] for level in levels]),
        dt=dt,
        steps=steps,
        speed=speed,
        theta0=frame.theta0,
        order=order,
    )
