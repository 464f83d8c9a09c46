from abc import ABCMeta
from abc import abstractmethod
from enum import Enum
from typing import Any
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.candidates import GameFrame

__all__ = [
    "Provenance",
    "HamiltonianMetadata",
    "HamiltonianModel",
]


class Provenance(str, Enum):
    MCSHANE = "mcshane"
    CLOSED_FORM = "closed-form"


class HamiltonianMetadata(BaseModel):
    """
    Regularity constants of a Hamiltonian over its box.

    ``upsilon`` bounds the growth and the s-Lipschitz constant per unit of (1 + |x|), ``lipschitz`` and
    ``modulus`` bound the variation of the unit-sphere restriction in x and t.
    """

    gamma: float
    upsilon: float
    lipschitz: float = 0.0
    modulus: float = 0.0
    provenance: Provenance
    x_independent: bool = False
    covering_radius: float | None = None
    samples: int = 0
    box: Tuple[float, float] = (-1.0, 1.0)


class HamiltonianModel(BaseModel, metaclass=ABCMeta):
    """The Hamiltonian interface: a positively homogeneous function H(t, x, s)."""

    frame: GameFrame
    metadata: HamiltonianMetadata

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @abstractmethod
    def evaluate(self, t: Any, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        """
        Evaluate H on broadcastable arrays.

        :param t: times, scalar or shape (...)
        :param x: points, shape (..., n)
        :param s: co-states, shape (..., n)
        :return: the values, shape (...)
        """
        pass

    def __call__(self, t: float, x: Any, s: Any) -> float:
        return float(self.evaluate(t, np.asarray(x, dtype=float), np.asarray(s, dtype=float)))

    def axis_speed(self, x_max: float) -> float:
        """
        Bound of |dH/ds_i| over points with |x| <= x_max.
        """
        if self.metadata.x_independent:
            return self.metadata.upsilon
        return self.metadata.upsilon * (1.0 + x_max)

    def growth(self, x: np.ndarray) -> np.ndarray:
        """
        The factor upsilon * (1 + |x|).
        """
        x = np.asarray(x, dtype=float)
        return self.metadata.upsilon * (1.0 + np.linalg.norm(x, axis=-1))
