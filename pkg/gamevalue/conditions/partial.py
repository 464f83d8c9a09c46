from collections import defaultdict
from enum import Enum
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel
from scipy.optimize import linprog

from gamevalue.candidates import Position
from gamevalue.exceptions import MissingHamiltonianValue
from gamevalue.exceptions import NotInHullError
from gamevalue.nonsmooth import LimitingData

__all__ = [
    "HOrigin",
    "HSample",
    "PartialHamiltonian",
    "ExtensionStatus",
    "ExtensionResult",
    "extend_h_e2",
    "build_partial",
]

ZERO_NORM = 1e-9


class HOrigin(str, Enum):
    E1 = "E1"
    E2 = "E2-extended"


class HSample(BaseModel):
    """
    A value of the partial Hamiltonian at (position, s).
    """

    position: Position
    s: Tuple[float, ...]
    h: float
    origin: HOrigin

    def normalized(self) -> Optional[Tuple[Tuple[float, ...], float]]:
        """
        The unit vector and the scaled value h / |s|, None for a vanishing s.
        """
        norm = float(np.linalg.norm(self.s))
        if norm < ZERO_NORM:
            return None
        return tuple(float(v) / norm for v in self.s), self.h / norm


class PartialHamiltonian(BaseModel):
    """
    Sampled graph of the partial Hamiltonian over limiting and extended gradients.
    """

    samples: List[HSample] = []

    def __len__(self) -> int:
        return len(self.samples)

    def by_position(self, digits: int = 12) -> Dict[Tuple[float, ...], List[HSample]]:
        groups: Dict[Tuple[float, ...], List[HSample]] = defaultdict(list)
        for sample in self.samples:
            groups[sample.position.key(digits)].append(sample)
        return dict(groups)

    def restricted(self, origin: HOrigin) -> "PartialHamiltonian":
        return PartialHamiltonian(samples=[sample for sample in self.samples if sample.origin == origin])

    def value_at(self, p: Position, s: np.ndarray, tolerance: float = 1e-9) -> float:
        """
        The sampled value at (p, s).

        :raises MissingHamiltonianValue: when no sample matches
        """
        key = p.key()
        for sample in self.samples:
            if sample.position.key() == key and np.max(np.abs(np.asarray(sample.s) - s)) <= tolerance:
                return sample.h
        raise MissingHamiltonianValue(f"No value of h at {p} for s={tuple(s)}.")

    def normalized_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, List[int]]:
        """
        Arrays of the normalized view: positions (t, x), unit vectors, scaled values and the sample indices.
        """
        rows, units, values, indices = [], [], [], []
        for index, sample in enumerate(self.samples):
            normalized = sample.normalized()
            if normalized is None:
                continue
            rows.append(sample.position.as_array())
            units.append(normalized[0])
            values.append(normalized[1])
            indices.append(index)
        if not rows:
            return np.empty((0, 0)), np.empty((0, 0)), np.empty(0), []
        return np.array(rows), np.array(units), np.array(values), indices


class ExtensionStatus(str, Enum):
    VALUE = "value"
    ILL_DEFINED = "ill-defined"


class ExtensionResult(BaseModel):
    """
    The canonical extension at one complement vector: the common value of every convex representation.
    """

    position: Position
    s: Tuple[float, ...]
    status: ExtensionStatus
    value: Optional[float] = None
    low: float
    high: float
    representations: List[Tuple[float, ...]]


def _representation(gradients: np.ndarray, h: np.ndarray, s: np.ndarray, sense: float) -> np.ndarray:
    count = len(gradients)
    a_eq = np.vstack([gradients.T, np.ones((1, count))])
    b_eq = np.concatenate([s, [1.0]])
    result = linprog(sense * h, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * count, method="highs")
    if result.status != 0:
        raise NotInHullError(f"s={tuple(s)} is not a convex combination of the limiting gradients.")
    return result.x


def extend_h_e2(ld: LimitingData, s: np.ndarray, tolerance: float = 1e-9) -> ExtensionResult:
    """
    Extend the partial Hamiltonian to a complement vector by convex combinations of limiting gradients.

    Both extreme values of sum(lambda * h) over the representations sum(lambda * s_k) = s are computed with
    linear programs; the extension is well defined when they agree.

    :param ld: limiting data at the position
    :param s: a vector of the complement set
    :param tolerance: largest accepted spread between the two extremes
    :return: the value, or an ill-defined result carrying both representations
    """
    s = np.asarray(s, dtype=float)
    gradients, h = ld.gradients(), ld.h_values()
    lowest = _representation(gradients, h, s, 1.0)
    highest = _representation(gradients, h, s, -1.0)
    low, high = float(lowest @ h), float(highest @ h)
    representations = [tuple(float(v) for v in highest), tuple(float(v) for v in lowest)]
    if high - low <= tolerance:
        return ExtensionResult(
            position=ld.position,
            s=tuple(float(v) for v in s),
            status=ExtensionStatus.VALUE,
            value=high,
            low=low,
            high=high,
            representations=representations,
        )
    logger.debug(f"The extension at {ld.position}, s={tuple(s)} is ill-defined: [{low}, {high}].")
    return ExtensionResult(
        position=ld.position,
        s=tuple(float(v) for v in s),
        status=ExtensionStatus.ILL_DEFINED,
        low=low,
        high=high,
        representations=representations,
    )


def build_partial(
    analyses: List[LimitingData], tolerance: float = 1e-9
) -> Tuple[PartialHamiltonian, List[ExtensionResult]]:
    """
    Sample the partial Hamiltonian on limiting gradients and extend it to the sampled complement vectors.

    :return: the partial Hamiltonian and every extension attempted, ill-defined ones included
    """
    samples: List[HSample] = []
    extensions: List[ExtensionResult] = []
    for ld in analyses:
        for entry in ld.e1:
            samples.append(HSample(position=ld.position, s=entry.s, h=entry.h, origin=HOrigin.E1))
        for s in ld.e2:
            try:
                result = extend_h_e2(ld, np.asarray(s), tolerance)
            except NotInHullError as exception:
                logger.warning(f"Skipping the complement vector {s} at {ld.position}: {exception}")
                continue
            extensions.append(result)
            if result.status == ExtensionStatus.VALUE:
                samples.append(HSample(position=ld.position, s=result.s, h=result.value, origin=HOrigin.E2))
    return PartialHamiltonian(samples=samples), extensions
