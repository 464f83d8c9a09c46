from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from gamevalue.hamiltonians.model import HamiltonianModel

__all__ = [
    "RegularityReport",
    "verify_h123",
]


class RegularityReport(BaseModel):
    """
    Sampled growth, continuity and homogeneity of a Hamiltonian.

    Ratios are observed values over their bounds, a ratio above one is a violation.
    """

    draws: int
    growth_ratio: float
    growth_violations: int
    s_lipschitz_ratio: float
    s_lipschitz_violations: int
    continuity_ratio: float
    continuity_violations: int
    homogeneity_residual: float
    homogeneity_violations: int
    upsilon: float
    x_lipschitz: float
    time_modulus: float

    @property
    def passed(self) -> bool:
        return (
            self.growth_violations + self.s_lipschitz_violations
            + self.continuity_violations + self.homogeneity_violations
        ) == 0


def _ratio(observed: np.ndarray, bound: np.ndarray, slack: float) -> Tuple[float, int]:
    allowed = bound + slack * (1.0 + np.abs(bound))
    ratios = np.where(bound > 0, observed / np.where(bound > 0, bound, 1.0), np.where(observed > slack, np.inf, 0.0))
    return float(np.max(ratios, initial=0.0)), int(np.sum(observed > allowed))


def verify_h123(
    hamiltonian: HamiltonianModel,
    box: Tuple[float, float] = (-1.0, 1.0),
    draws: int = 1000,
    s_radius: float = 2.0,
    alpha_max: float = 10.0,
    seed: int = 0,
    slack: float = 1e-12,
) -> RegularityReport:
    """
    Property-test the growth bound, the continuity bound and positive homogeneity on random draws.

    The continuity bound uses the time modulus W R |dt|, the x-constant (L + 2 gamma) R and the s-constant
    upsilon (1 + min(|x'|, |x''|)), for co-states of norm at most R.

    :param hamiltonian: the Hamiltonian
    :param box: the spatial box of the draws
    :param draws: the number of draws of each test
    :param s_radius: the largest co-state norm R
    :param alpha_max: the largest homogeneity factor
    :param seed: the seed of the draws
    :param slack: relative slack of the comparisons
    :return: the report
    """
    frame = hamiltonian.frame
    metadata = hamiltonian.metadata
    n = frame.n
    rng = np.random.default_rng(seed)

    def positions() -> Tuple[np.ndarray, np.ndarray]:
        return rng.uniform(frame.t0, frame.theta0, draws), rng.uniform(box[0], box[1], (draws, n))

    def costates() -> np.ndarray:
        directions = rng.normal(size=(draws, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        return directions * s_radius * rng.uniform(0.0, 1.0, (draws, 1)) ** (1.0 / n)

    upsilon = metadata.upsilon
    t, x = positions()
    s, s_other = costates(), costates()
    values = hamiltonian.evaluate(t, x, s)
    weight = 1.0 + np.linalg.norm(x, axis=1)
    growth = _ratio(np.abs(values), upsilon * np.linalg.norm(s, axis=1) * weight, slack)
    s_lipschitz = _ratio(
        np.abs(values - hamiltonian.evaluate(t, x, s_other)),
        upsilon * weight * np.linalg.norm(s - s_other, axis=1),
        slack,
    )

    t_other, x_other = positions()
    x_constant = metadata.lipschitz + 2.0 * metadata.gamma
    if metadata.x_independent:
        x_constant = 0.0
    bound = (
        metadata.modulus * s_radius * np.abs(t - t_other)
        + x_constant * s_radius * np.linalg.norm(x - x_other, axis=1)
        + upsilon * (1.0 + np.minimum(np.linalg.norm(x, axis=1), np.linalg.norm(x_other, axis=1)))
        * np.linalg.norm(s - s_other, axis=1)
    )
    continuity = _ratio(np.abs(values - hamiltonian.evaluate(t_other, x_other, s_other)), bound, slack)

    alpha = rng.uniform(0.0, alpha_max, draws)
    scaled = hamiltonian.evaluate(t, x, alpha[:, None] * s)
    residual = np.abs(scaled - alpha * values)
    homogeneity_violations = int(np.sum(residual > slack * (1.0 + np.abs(alpha * values))))

    report = RegularityReport(
        draws=draws,
        growth_ratio=growth[0],
        growth_violations=growth[1],
        s_lipschitz_ratio=s_lipschitz[0],
        s_lipschitz_violations=s_lipschitz[1],
        continuity_ratio=continuity[0],
        continuity_violations=continuity[1],
        homogeneity_residual=float(np.max(residual)),
        homogeneity_violations=homogeneity_violations,
        upsilon=upsilon,
        x_lipschitz=x_constant * s_radius,
        time_modulus=metadata.modulus * s_radius,
    )
    if report.passed:
        logger.info(f"H1-H3 hold on {draws} draws (largest growth ratio {report.growth_ratio:.3g}).")
    else:
        logger.warning(f"H1-H3 violations: {report.model_dump()}")
    return report
