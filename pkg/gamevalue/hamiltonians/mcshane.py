from typing import Any
from typing import Dict
from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import PrivateAttr
from scipy.spatial import cKDTree

from gamevalue.candidates import GameFrame
from gamevalue.conditions import ConditionId
from gamevalue.conditions import ConditionReport
from gamevalue.conditions import ConditionStatus
from gamevalue.conditions import PartialHamiltonian
from gamevalue.exceptions import ConditionNotPassed
from gamevalue.exceptions import EmptySampleSet
from gamevalue.hamiltonians.model import HamiltonianMetadata
from gamevalue.hamiltonians.model import HamiltonianModel
from gamevalue.hamiltonians.model import Provenance

__all__ = [
    "ENatSamples",
    "McShaneExtension",
    "McShaneHamiltonian",
    "build_sample_set",
    "calibrate_moduli",
    "mcshane_extend",
    "homogenize",
    "EXHAUSTIVE_LIMIT",
]

EXHAUSTIVE_LIMIT = 10_000
CHUNK_ENTRIES = 2_000_000
KEY_DIGITS = 12


class ENatSamples(BaseModel):
    """
    The sampled graph of the scaled partial Hamiltonian over (t, x, unit s) with its moduli.
    """

    frame: GameFrame
    box: Tuple[float, float]
    times: np.ndarray
    points: np.ndarray
    units: np.ndarray
    values: np.ndarray
    gamma: float
    lipschitz: float
    modulus: float
    zero_gradients: int = 0
    calibrated: bool = False

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def __len__(self) -> int:
        return len(self.values)

    def covering_radius(self, probes: int = 2000, seed: int = 0) -> float:
        """
        Largest distance from random probes of box x sphere to the nearest sample in (t, x, unit s).
        """
        if len(self) == 0:
            return float("inf")
        n = self.frame.n
        rng = np.random.default_rng(seed)
        directions = rng.normal(size=(probes, n))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        queries = np.column_stack(
            [
                rng.uniform(self.frame.t0, self.frame.theta0, probes),
                rng.uniform(self.box[0], self.box[1], (probes, n)),
                directions,
            ]
        )
        tree = cKDTree(np.column_stack([self.times, self.points, self.units]))
        distances, _ = tree.query(queries)
        return float(np.max(distances))

    def to_table(self) -> Dict[str, Any]:
        return {
            "t": self.times.tolist(),
            "x": self.points.tolist(),
            "s": self.units.tolist(),
            "h": self.values.tolist(),
        }

    @classmethod
    def from_table(
        cls, table: Dict[str, Any], frame: GameFrame, box: Tuple[float, float], **constants: Any
    ) -> "ENatSamples":
        n = frame.n
        return cls(
            frame=frame,
            box=box,
            times=np.asarray(table["t"], dtype=float).reshape(-1),
            points=np.asarray(table["x"], dtype=float).reshape(-1, n),
            units=np.asarray(table["s"], dtype=float).reshape(-1, n),
            values=np.asarray(table["h"], dtype=float).reshape(-1),
            **constants,
        )


def build_sample_set(
    partial: PartialHamiltonian,
    report: ConditionReport,
    frame: GameFrame,
    box: Tuple[float, float],
    force: bool = False,
) -> ENatSamples:
    """
    Normalize the partial Hamiltonian to (t, x, s / |s|, h / |s|) triples carrying the growth estimates.

    Vanishing gradients only contribute H(t, x, 0) = 0 and are counted, not stored.

    :param partial: the partial Hamiltonian over limiting and extended gradients
    :param report: the growth report providing gamma, L and W
    :param frame: the game frame
    :param box: the spatial box of the samples
    :param force: accept an inconclusive growth report
    :return: the calibrated sample set
    """
    if report.condition != ConditionId.E4 or report.estimates is None:
        raise ConditionNotPassed("The growth condition has no estimates: the extension cannot be built.")
    if report.status != ConditionStatus.PASS and not force:
        raise ConditionNotPassed(f"The growth condition is {report.status.value}.")
    if len(partial) == 0:
        raise EmptySampleSet("The partial Hamiltonian has no samples.")
    rows, units, values, indices = partial.normalized_arrays()
    n = frame.n
    if len(values):
        keys = np.round(np.column_stack([rows, units]), KEY_DIGITS) + 0.0
        _, first = np.unique(keys, axis=0, return_index=True)
        first = np.sort(first)
        rows, units, values = rows[first], units[first], values[first]
    else:
        rows, units = np.empty((0, n + 1)), np.empty((0, n))
    estimates = report.estimates
    samples = ENatSamples(
        frame=frame,
        box=box,
        times=rows[:, 0],
        points=rows[:, 1:],
        units=units,
        values=values,
        gamma=estimates.gamma,
        lipschitz=max(estimates.lipschitz, estimates.gamma),
        modulus=estimates.modulus,
        zero_gradients=len(partial) - len(indices),
    )
    logger.info(f"Built {len(samples)} normalized samples ({samples.zero_gradients} vanishing gradients).")
    return calibrate_moduli(samples)


def _pair_blocks(samples: ENatSamples):
    count = len(samples)
    size = max(1, CHUNK_ENTRIES // max(count, 1))
    for start in range(0, count, size):
        block = slice(start, min(start + size, count))
        rise = samples.values[None, :] - samples.values[block, None]
        dt = np.abs(samples.times[block, None] - samples.times[None, :])
        dx = np.linalg.norm(samples.points[block, None, :] - samples.points[None, :, :], axis=-1)
        ds = np.linalg.norm(samples.units[block, None, :] - samples.units[None, :, :], axis=-1)
        weight = 1.0 + np.linalg.norm(samples.points[block], axis=1)[:, None]
        yield rise, dt, dx, ds, weight


def calibrate_moduli(samples: ENatSamples, tiny: float = 1e-12) -> ENatSamples:
    """
    Raise gamma, L and W until every ordered sample pair satisfies
    h_j - h_i <= W |t_i - t_j| + L |x_i - x_j| + gamma (1 + |x_i|) |s_i - s_j|, and |h_i| <= gamma (1 + |x_i|).

    These pair inequalities make the extension reproduce every sample exactly.
    """
    if len(samples) == 0:
        return samples.model_copy(update={"calibrated": True})
    gamma = max(samples.gamma, float(np.max(np.abs(samples.values) / (1.0 + np.linalg.norm(samples.points, axis=1)))))
    lipschitz, modulus = max(samples.lipschitz, gamma), samples.modulus

    for rise, dt, dx, ds, weight in _pair_blocks(samples):
        rising = rise > 0
        only_t = rising & (dx <= tiny) & (ds <= tiny) & (dt > tiny)
        if np.any(only_t):
            modulus = max(modulus, float(np.max(rise[only_t] / dt[only_t])))
        only_x = rising & (dt <= tiny) & (ds <= tiny) & (dx > tiny)
        if np.any(only_x):
            lipschitz = max(lipschitz, float(np.max(rise[only_x] / dx[only_x])))
        only_s = rising & (dt <= tiny) & (dx <= tiny) & (ds > tiny)
        if np.any(only_s):
            gamma = max(gamma, float(np.max(rise[only_s] / (weight * ds)[only_s])))
    lipschitz = max(lipschitz, gamma)

    factor = 1.0
    for rise, dt, dx, ds, weight in _pair_blocks(samples):
        bound = modulus * dt + lipschitz * dx + gamma * weight * ds
        tight = (rise > 0) & (bound > 0)
        if np.any(tight):
            factor = max(factor, float(np.max(rise[tight] / bound[tight])))
    if factor > 1.0:
        factor *= 1.0 + 1e-9
    raised = (gamma * factor, lipschitz * factor, modulus * factor)
    if raised != (samples.gamma, samples.lipschitz, samples.modulus):
        logger.info(
            f"Calibrated the moduli from (gamma, L, W) = {(samples.gamma, samples.lipschitz, samples.modulus)} "
            f"to {raised}."
        )
    return samples.model_copy(
        update={"gamma": raised[0], "lipschitz": raised[1], "modulus": raised[2], "calibrated": True}
    )


class McShaneExtension(BaseModel):
    """
    The sup-of-cones extension h*(t, x, s) of the sampled graph to the whole box and unit sphere.
    """

    samples: ENatSamples
    _tree: cKDTree | None = PrivateAttr(default=None)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def floor(self, x: np.ndarray) -> np.ndarray:
        return -self.samples.gamma * (1.0 + np.linalg.norm(x, axis=-1))

    def _terms(self, t: np.ndarray, x: np.ndarray, s: np.ndarray, index: np.ndarray) -> np.ndarray:
        samples = self.samples
        weight = 1.0 + np.linalg.norm(x, axis=-1)
        return (
            samples.values[index]
            - samples.modulus * np.abs(t - samples.times[index])
            - samples.lipschitz * np.linalg.norm(x - samples.points[index], axis=-1)
            - samples.gamma * weight * np.linalg.norm(s - samples.units[index], axis=-1)
        )

    def _exhaustive(self, t: np.ndarray, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        result = self.floor(x)
        count = len(self.samples)
        size = max(1, CHUNK_ENTRIES // count)
        every = np.arange(count)[None, :]
        for start in range(0, len(t), size):
            block = slice(start, start + size)
            terms = self._terms(t[block, None], x[block, None, :], s[block, None, :], every)
            result[block] = np.maximum(result[block], terms.max(axis=1))
        return result

    def _branch_and_bound(self, t: np.ndarray, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        samples = self.samples
        slope = min(samples.lipschitz, samples.gamma)
        if slope <= 0:
            return self._exhaustive(t, x, s)
        if self._tree is None:
            self._tree = cKDTree(np.column_stack([samples.points, samples.units]))
        queries = np.column_stack([x, s])
        _, nearest = self._tree.query(queries, k=min(8, len(samples)))
        nearest = nearest.reshape(len(t), -1)
        lower = np.maximum(
            self.floor(x), self._terms(t[:, None], x[:, None, :], s[:, None, :], nearest).max(axis=1)
        )
        radius = np.maximum((float(np.max(samples.values)) - lower) / slope, 0.0)
        neighbours = self._tree.query_ball_point(queries, radius * (1.0 + 1e-12) + 1e-12)
        owners = np.repeat(np.arange(len(t)), [len(found) for found in neighbours])
        if owners.size == 0:
            return lower
        index = np.concatenate([np.asarray(found, dtype=int) for found in neighbours])
        terms = self._terms(t[owners], x[owners], s[owners], index)
        result = lower.copy()
        np.maximum.at(result, owners, terms)
        return result

    def evaluate(self, t: Any, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """
        Evaluate h* at unit co-states.

        :param t: times, scalar or shape (...)
        :param x: points, shape (..., n)
        :param s: unit vectors, shape (..., n)
        :return: the values, shape (...)
        """
        n = self.samples.frame.n
        x = np.asarray(x, dtype=float)
        s = np.asarray(s, dtype=float)
        shape = np.broadcast_shapes(np.shape(t), x.shape[:-1], s.shape[:-1])
        t_flat = np.broadcast_to(np.asarray(t, dtype=float), shape).reshape(-1)
        x_flat = np.broadcast_to(x, (*shape, n)).reshape(-1, n)
        s_flat = np.broadcast_to(s, (*shape, n)).reshape(-1, n)
        if len(self.samples) == 0:
            return self.floor(x_flat).reshape(shape)
        if len(self.samples) < EXHAUSTIVE_LIMIT:
            return self._exhaustive(t_flat, x_flat, s_flat).reshape(shape)
        return self._branch_and_bound(t_flat, x_flat, s_flat).reshape(shape)


def mcshane_extend(samples: ENatSamples) -> McShaneExtension:
    """
    Extend the sampled graph by
    h*(t, x, s) = max(-gamma (1 + |x|), max_j [h_j - W |t - t_j| - L |x - x_j| - gamma (1 + |x|) |s - s_j|]).
    """
    if not samples.calibrated:
        samples = calibrate_moduli(samples)
    if len(samples) == 0:
        logger.warning("The sample set is empty: the extension is the growth floor.")
    return McShaneExtension(samples=samples)


class McShaneHamiltonian(HamiltonianModel):
    """
    H(t, x, s) = |s| h*(t, x, s / |s|) and H(t, x, 0) = 0.
    """

    extension: McShaneExtension

    def evaluate(self, t: Any, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        norm = np.linalg.norm(s, axis=-1)
        safe = np.where(norm > 0, norm, 1.0)
        values = norm * self.extension.evaluate(t, x, s / safe[..., None])
        return np.where(norm > 0, values, 0.0)


def homogenize(h_star: McShaneExtension, probes: int = 2000, seed: int = 0) -> McShaneHamiltonian:
    """
    Homogenize the extension into a Hamiltonian with upsilon = 2 gamma.
    """
    samples = h_star.samples
    covering = samples.covering_radius(probes=probes, seed=seed) if len(samples) else None
    metadata = HamiltonianMetadata(
        gamma=samples.gamma,
        upsilon=2.0 * samples.gamma,
        lipschitz=samples.lipschitz,
        modulus=samples.modulus,
        provenance=Provenance.MCSHANE,
        covering_radius=covering,
        samples=len(samples),
        box=samples.box,
    )
    return McShaneHamiltonian(frame=samples.frame, metadata=metadata, extension=h_star)
