from typing import Any
from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from gamevalue.exceptions import IdentityVerificationFailed
from gamevalue.games.controls import ControlSetKind
from gamevalue.games.dynamics import GameDynamics
from gamevalue.games.dynamics import GameKind

__all__ = [
    "IdentityReport",
    "payoff_matrix",
    "enumerate_optimum",
    "iterated_optima",
    "identity_tolerance",
    "homogeneity_defect",
    "verify_hamiltonian_identity",
]

FINITE_TOLERANCE = 1e-12


def _max_min_affine(
    constant: np.ndarray,
    inner_scale: np.ndarray,
    outer_scale: np.ndarray,
    inner_values: np.ndarray,
    outer_values: np.ndarray,
) -> float:
    """
    max over (w, q) of min over (r, p) of constant[w, r] + inner_scale[w, r] p + outer_scale[w, r] q.

    p ranges over inner_values and q over outer_values. The minimum over p is attained at an extreme value,
    the minimum over r is concave in q, so the best q of every row is found by bisection on the sorted values.
    """
    low_p, high_p = float(np.min(inner_values)), float(np.max(inner_values))
    reduced = constant + np.minimum(inner_scale * low_p, inner_scale * high_p)
    q = np.unique(outer_values)
    rows = np.arange(reduced.shape[0])

    def envelope(index: np.ndarray) -> np.ndarray:
        return np.min(reduced + outer_scale * q[index][:, None], axis=1)

    low = np.zeros(len(rows), dtype=int)
    high = np.full(len(rows), len(q) - 1)
    while np.any(low < high):
        active = low < high
        middle = (low + high) // 2
        ascending = envelope(np.minimum(middle + 1, len(q) - 1)) >= envelope(middle)
        low = np.where(active & ascending, middle + 1, low)
        high = np.where(active & ~ascending, middle, high)
    return float(np.max(envelope(low)))


def iterated_optima(game: GameDynamics, t: float, x: np.ndarray, s: np.ndarray, delta: float) -> Tuple[float, float]:
    """
    The max-min and the min-max of <s, f(t, x, u, v)> over the discretized control sets, v maximizing.

    The secondary controls are eliminated exactly, the primary controls are enumerated.
    """
    if game.p.kind == ControlSetKind.FINITE:
        return enumerate_optimum(game, t, x, s, delta)
    x, s = np.asarray(x, dtype=float), np.asarray(s, dtype=float)
    y = game.p.components(delta)
    z = game.q.components(delta)
    a, b, c = game.coefficients(t, x, y[None, :, :], z[:, None, :])
    linear = a @ s
    p_values = y @ s
    q_values = z @ s
    maxmin = _max_min_affine(linear, b, c, p_values, q_values)
    minmax = -_max_min_affine(-linear.T, -c.T, -b.T, q_values, p_values)
    return maxmin, minmax


def payoff_matrix(game: GameDynamics, t: float, x: np.ndarray, s: np.ndarray, delta: float) -> np.ndarray:
    """
    The matrix <s, f(t, x, u, v)>, rows indexed by the pairs v = (z, z') and columns by u = (y, y').
    """
    x, s = np.asarray(x, dtype=float), np.asarray(s, dtype=float)
    y, y_secondary = game.p.pairs(delta)
    z, z_secondary = game.q.pairs(delta)
    a, b, c = game.coefficients(t, x, y[None, :, :], z[:, None, :])
    return a @ s + b * (y_secondary @ s)[None, :] + c * (z_secondary @ s)[:, None]


def enumerate_optimum(game: GameDynamics, t: float, x: np.ndarray, s: np.ndarray, delta: float) -> Tuple[float, float]:
    """
    Brute-force max-min and min-max over the full payoff matrix.
    """
    matrix = payoff_matrix(game, t, x, s, delta)
    return float(matrix.min(axis=1).max()), float(matrix.max(axis=0).min())


def identity_tolerance(game: GameDynamics, x: np.ndarray, s: np.ndarray, delta: float) -> float:
    """
    The discretization tolerance 2 upsilon (1 + |x|) (2 + |s|) delta, or a rounding tolerance on finite sets.
    """
    if game.p.kind == ControlSetKind.FINITE:
        return FINITE_TOLERANCE
    speed = game.upsilon * (1.0 + float(np.linalg.norm(x)))
    return 2.0 * speed * (2.0 + float(np.linalg.norm(s))) * delta


class IdentityReport(BaseModel):
    """
    How well the iterated optimum of the game reproduces the Hamiltonian on random draws.
    """

    kind: GameKind
    samples: int
    delta: float
    max_error: float
    mean_error: float
    max_tolerance: float
    violations: int
    max_isaacs_gap: float
    isaacs_gap_position: Tuple[float, ...] | None = None
    weak_duality_violations: int
    growth_ratio: float
    growth_violations: int
    derived_formula: bool

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.weak_duality_violations == 0 and self.growth_violations == 0


def _growth(
    game: GameDynamics, t: np.ndarray, x: np.ndarray, delta: float, rng: np.random.Generator
) -> Tuple[float, int]:
    y, y_secondary = game.p.pairs(delta)
    z, z_secondary = game.q.pairs(delta)
    u = rng.integers(len(y), size=len(t))
    v = rng.integers(len(z), size=len(t))
    velocity = game.velocity(t, x, y[u], y_secondary[u], z[v], z_secondary[v])
    bound = game.growth_constant * (1.0 + np.linalg.norm(x, axis=-1))
    observed = np.linalg.norm(velocity, axis=-1)
    ratios = np.where(bound > 0, observed / np.where(bound > 0, bound, 1.0), np.where(observed > 0, np.inf, 0.0))
    return float(np.max(ratios, initial=0.0)), int(np.sum(observed > bound * (1.0 + 1e-12) + 1e-12))


def verify_hamiltonian_identity(
    game: GameDynamics,
    samples: int = 500,
    delta: float = 0.05,
    box: Tuple[float, float] | None = None,
    s_radius: float = 2.0,
    seed: int = 0,
    strict: bool = True,
) -> IdentityReport:
    """
    Compare the iterated optimum of <s, f> with H(t, x, s) at random draws.

    The optimum is taken in the declared order of the game, both orders for the Isaacs game. The max-min
    never exceeds the min-max on the same grids by more than twice the tolerance.

    :param game: the dynamics
    :param samples: the number of random (t, x, s) draws
    :param delta: the sphere spacing of the ball discretization
    :param box: the spatial box of the draws, the Hamiltonian box by default
    :param s_radius: co-states are drawn in [-s_radius, s_radius]^n
    :param seed: the seed of the draws
    :param strict: raise IdentityVerificationFailed when the weak duality check fails
    :return: the report
    """
    hamiltonian = game.hamiltonian
    frame = hamiltonian.frame
    box = box or hamiltonian.metadata.box
    rng = np.random.default_rng(seed)
    t = rng.uniform(frame.t0, frame.theta0, samples)
    x = rng.uniform(box[0], box[1], (samples, frame.n))
    s = rng.uniform(-s_radius, s_radius, (samples, frame.n))
    expected = hamiltonian.evaluate(t, x, s)

    errors = np.zeros(samples)
    tolerances = np.zeros(samples)
    gaps = np.zeros(samples)
    duality = 0
    for i in range(samples):
        maxmin, minmax = iterated_optima(game, float(t[i]), x[i], s[i], delta)
        tolerances[i] = identity_tolerance(game, x[i], s[i], delta)
        if game.kind == GameKind.MINMAX:
            errors[i] = abs(minmax - expected[i])
        elif game.kind == GameKind.ISAACS_1D:
            errors[i] = max(abs(maxmin - expected[i]), abs(minmax - expected[i]))
        else:
            errors[i] = abs(maxmin - expected[i])
        gaps[i] = minmax - maxmin
        if maxmin > minmax + 2.0 * tolerances[i]:
            duality += 1
            logger.error(f"Weak duality fails at t={t[i]:.4g}, x={x[i]}, s={s[i]}: {maxmin} > {minmax}.")
    if duality and strict:
        raise IdentityVerificationFailed(f"Max-min exceeds min-max at {duality} draws.")

    growth_ratio, growth_violations = _growth(game, t, x, delta, rng)
    worst_gap = int(np.argmax(gaps))
    finite_scale = np.maximum(1.0, np.abs(expected)) if game.p.kind == ControlSetKind.FINITE else 1.0
    report = IdentityReport(
        kind=game.kind,
        samples=samples,
        delta=delta,
        max_error=float(np.max(errors)),
        mean_error=float(np.mean(errors)),
        max_tolerance=float(np.max(tolerances)),
        violations=int(np.sum(errors > tolerances * finite_scale)),
        max_isaacs_gap=float(gaps[worst_gap]),
        isaacs_gap_position=(float(t[worst_gap]), *map(float, x[worst_gap]), *map(float, s[worst_gap])),
        weak_duality_violations=duality,
        growth_ratio=growth_ratio,
        growth_violations=growth_violations,
        derived_formula=game.derived,
    )
    logger.info(
        f"{game.kind.value} identity on {samples} draws at delta={delta}: max error {report.max_error:.3g} "
        f"(tolerance up to {report.max_tolerance:.3g}), Isaacs gap up to {report.max_isaacs_gap:.3g}."
    )
    return report


def homogeneity_defect(game: GameDynamics, t: float, x: Any, s: Any, delta: float, factor: float = 2.0) -> float:
    """
    |optimum(factor s) - factor optimum(s)| in the declared order of the game.
    """
    s = np.asarray(s, dtype=float)
    base = iterated_optima(game, t, x, s, delta)
    scaled = iterated_optima(game, t, x, factor * s, delta)
    order = 1 if game.kind == GameKind.MINMAX else 0
    return abs(scaled[order] - factor * base[order])
