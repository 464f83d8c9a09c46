import math
from typing import Tuple

from loguru import logger

from gamevalue.exceptions import IdentityVerificationFailed
from gamevalue.exceptions import MissingRegularityMetadata
from gamevalue.exceptions import UnsupportedDimension
from gamevalue.games.controls import ControlSet
from gamevalue.games.controls import ControlSetKind
from gamevalue.games.dynamics import GameDynamics
from gamevalue.games.dynamics import GameKind
from gamevalue.games.identity import verify_hamiltonian_identity
from gamevalue.hamiltonians import HamiltonianModel
from gamevalue.hamiltonians import RegularityReport

__all__ = [
    "synth_maxmin",
    "synth_minmax",
    "synth_isaacs_1d",
    "synthesize",
]


def _constants(hamiltonian: HamiltonianModel, regularity: RegularityReport | None) -> Tuple[float, float]:
    metadata = hamiltonian.metadata
    if regularity is None:
        raise MissingRegularityMetadata("The Hamiltonian has no H1-H3 report: run verify_h123 first.")
    if not (math.isfinite(metadata.upsilon) and math.isfinite(metadata.gamma)) or metadata.upsilon < 0:
        raise MissingRegularityMetadata(
            f"Invalid regularity constants gamma={metadata.gamma}, upsilon={metadata.upsilon}."
        )
    if not regularity.passed:
        logger.warning("H1-H3 do not hold on every draw: the game may not reproduce the Hamiltonian.")
    return metadata.upsilon, metadata.gamma + 4.0 * metadata.upsilon


def _balls(n: int) -> ControlSet:
    return ControlSet(kind=ControlSetKind.BALL_PRODUCT, dimension=n)


def synth_maxmin(hamiltonian: HamiltonianModel, regularity: RegularityReport | None) -> GameDynamics:
    """
    Dynamics on P = Q = B x B whose max-min Hamiltonian is H.
    """
    upsilon, growth_constant = _constants(hamiltonian, regularity)
    n = hamiltonian.frame.n
    game = GameDynamics(
        kind=GameKind.MAXMIN,
        hamiltonian=hamiltonian,
        p=_balls(n),
        q=_balls(n),
        upsilon=upsilon,
        growth_constant=growth_constant,
    )
    logger.info(f"Synthesized max-min dynamics with upsilon={upsilon:.4g}, growth constant {growth_constant:.4g}.")
    return game


def synth_minmax(
    hamiltonian: HamiltonianModel,
    regularity: RegularityReport | None,
    gate_samples: int = 20,
    gate_delta: float = 0.1,
    seed: int = 0,
) -> GameDynamics:
    """
    Dynamics on P = Q = B x B whose min-max Hamiltonian is H, emitted only after an identity check.

    :param hamiltonian: the Hamiltonian
    :param regularity: its H1-H3 report
    :param gate_samples: the number of draws of the identity check
    :param gate_delta: the ball spacing of the identity check
    :param seed: the seed of the draws
    :return: the dynamics
    """
    upsilon, growth_constant = _constants(hamiltonian, regularity)
    n = hamiltonian.frame.n
    game = GameDynamics(
        kind=GameKind.MINMAX,
        hamiltonian=hamiltonian,
        p=_balls(n),
        q=_balls(n),
        upsilon=upsilon,
        growth_constant=growth_constant,
        derived=True,
    )
    report = verify_hamiltonian_identity(game, samples=gate_samples, delta=gate_delta, seed=seed, strict=False)
    if not report.passed:
        raise IdentityVerificationFailed(
            f"The min-max dynamics miss H: max error {report.max_error:.4g} against tolerance "
            f"{report.max_tolerance:.4g}, {report.violations} violations, "
            f"{report.weak_duality_violations} weak duality failures, {report.growth_violations} growth failures."
        )
    logger.info(f"Synthesized min-max dynamics, identity error {report.max_error:.3g} on {gate_samples} draws.")
    return game


def synth_isaacs_1d(hamiltonian: HamiltonianModel, regularity: RegularityReport | None) -> GameDynamics:
    """
    One-dimensional dynamics on P = Q = {-1, 1} x {-1, 1} with max-min = min-max = H.
    """
    n = hamiltonian.frame.n
    if n != 1:
        raise UnsupportedDimension(f"The finite-control construction needs n = 1, got n = {n}.")
    upsilon, growth_constant = _constants(hamiltonian, regularity)
    finite = ControlSet(kind=ControlSetKind.FINITE, dimension=1)
    return GameDynamics(
        kind=GameKind.ISAACS_1D,
        hamiltonian=hamiltonian,
        p=finite,
        q=finite,
        upsilon=upsilon,
        growth_constant=growth_constant,
    )


def synthesize(
    kind: GameKind,
    hamiltonian: HamiltonianModel,
    regularity: RegularityReport | None,
    gate_samples: int = 20,
    gate_delta: float = 0.1,
    seed: int = 0,
) -> GameDynamics:
    if kind == GameKind.MINMAX:
        return synth_minmax(hamiltonian, regularity, gate_samples=gate_samples, gate_delta=gate_delta, seed=seed)
    if kind == GameKind.ISAACS_1D:
        return synth_isaacs_1d(hamiltonian, regularity)
    return synth_maxmin(hamiltonian, regularity)
