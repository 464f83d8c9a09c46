from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.candidates import CandidateValue

__all__ = [
    "TerminalPayoff",
]


class TerminalPayoff(BaseModel):
    """
    The terminal payoff sigma(x) = phi(theta0, x) and its sampled growth constant.
    """

    candidate: CandidateValue
    growth_constant: float

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_candidate(
        cls, candidate: CandidateValue, box: Tuple[float, float] = (-1.0, 1.0), draws: int = 2000, seed: int = 0
    ) -> "TerminalPayoff":
        rng = np.random.default_rng(seed)
        x = rng.uniform(box[0], box[1], (draws, candidate.frame.n))
        sigma = candidate.evaluate_array(candidate.frame.theta0, x)
        growth = float(np.max(np.abs(sigma) / (1.0 + np.linalg.norm(x, axis=1))))
        return cls(candidate=candidate, growth_constant=growth)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.candidate.evaluate_array(self.candidate.frame.theta0, np.asarray(x, dtype=float))
