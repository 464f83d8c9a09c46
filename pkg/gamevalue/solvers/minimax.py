from typing import List

import numpy as np
from loguru import logger
from pydantic import BaseModel

from gamevalue.candidates import PiecewiseForm
from gamevalue.candidates import Position
from gamevalue.conf import SamplingSettings
from gamevalue.conf import Tolerances
from gamevalue.hamiltonians import HamiltonianModel
from gamevalue.hamiltonians import Provenance
from gamevalue.nonsmooth import DiniPolytope
from gamevalue.nonsmooth import limiting_data
from gamevalue.nonsmooth import simplex_weights

__all__ = [
    "MinimaxViolation",
    "MinimaxReport",
    "residual_target",
    "minimax_spot_check",
]

CLOSED_FORM_TARGET = 1e-9
INTERIOR_POINTS = 20


class MinimaxViolation(BaseModel):
    position: Position
    inequality: str
    point: List[float]
    slack: float


class MinimaxReport(BaseModel):
    """
    Residuals of the equation at smooth positions and slacks of the minimax inequalities at the others.

    ``upper_slack`` is the largest a + H over the sampled subdifferential points and must not be positive,
    ``lower_slack`` the smallest a + H over the superdifferential points and must not be negative.
    """

    samples: int
    smooth_samples: int
    max_residual: float
    target: float
    upper_slack: float | None
    lower_slack: float | None
    violations: List[MinimaxViolation]
    passed: bool


def residual_target(hamiltonian: HamiltonianModel) -> float:
    """
    1e-9 for closed forms, 10 L delta for an extension of covering radius delta.
    """
    metadata = hamiltonian.metadata
    if metadata.provenance == Provenance.CLOSED_FORM:
        return CLOSED_FORM_TARGET
    covering = metadata.covering_radius or 0.0
    return max(10.0 * max(metadata.lipschitz, metadata.gamma) * covering, CLOSED_FORM_TARGET)


def _dini_points(polytope: DiniPolytope | None, seed: int) -> np.ndarray:
    if polytope is None or polytope.empty:
        return np.empty((0, 0))
    vertices = polytope.vertex_array()
    return np.vstack([vertices, simplex_weights(len(vertices), INTERIOR_POINTS, seed) @ vertices])


def minimax_spot_check(
    pw: PiecewiseForm,
    hamiltonian: HamiltonianModel,
    positions: List[Position],
    tolerances: Tolerances | None = None,
    sampling: SamplingSettings | None = None,
    seed: int = 0,
) -> MinimaxReport:
    """
    Check a + H(t, x, s) <= 0 on the subdifferential and >= 0 on the superdifferential.

    At smooth positions both reduce to the residual |dphi/dt + H(t, x, grad phi)|. The Dini sets are sampled
    at their vertices and at random interior points.

    :param pw: the piecewise form of the candidate
    :param hamiltonian: the Hamiltonian
    :param positions: the positions, strictly inside the time interval
    :param tolerances: numerical tolerances
    :param sampling: sampling densities
    :param seed: seed of the interior points
    :return: the report
    """
    tolerances = tolerances or Tolerances()
    target = residual_target(hamiltonian)
    residuals, upper, lower = [0.0], [], []
    violations: List[MinimaxViolation] = []
    smooth = 0
    for index, p in enumerate(positions):
        ld = limiting_data(pw, p, tolerances=tolerances, sampling=sampling, seed=seed + index)
        x = p.spatial
        if ld.smooth:
            smooth += 1
            entry = ld.e1[0]
            residual = abs(-entry.h + hamiltonian(p.t, x, entry.s))
            residuals.append(residual)
            if residual > target:
                violations.append(
                    MinimaxViolation(position=p, inequality="equation", point=[-entry.h, *entry.s], slack=residual)
                )
            continue
        for polytope, inequality in ((ld.sub, "upper"), (ld.sup, "lower")):
            points = _dini_points(polytope, seed + index)
            if len(points) == 0:
                continue
            slacks = points[:, 0] + hamiltonian.evaluate(p.t, x, points[:, 1:])
            if inequality == "upper":
                upper.append(float(slacks.max()))
                worst = int(np.argmax(slacks))
                failed = slacks[worst] > target
            else:
                lower.append(float(slacks.min()))
                worst = int(np.argmin(slacks))
                failed = slacks[worst] < -target
            if failed:
                violations.append(
                    MinimaxViolation(
                        position=p, inequality=inequality, point=points[worst].tolist(), slack=float(slacks[worst])
                    )
                )
    report = MinimaxReport(
        samples=len(positions),
        smooth_samples=smooth,
        max_residual=float(max(residuals)),
        target=target,
        upper_slack=max(upper) if upper else None,
        lower_slack=min(lower) if lower else None,
        violations=violations,
        passed=not violations,
    )
    logger.info(
        f"Minimax spot check on {len(positions)} positions: max residual {report.max_residual:.3g}, "
        f"{len(violations)} violations."
    )
    return report
