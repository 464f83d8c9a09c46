from pathlib import Path
from typing import Any
from typing import Dict
from typing import Tuple

import numpy as np
import orjson
from loguru import logger

from gamevalue.candidates import ExprNode
from gamevalue.candidates import GameFrame
from gamevalue.candidates import NodeKind
from gamevalue.candidates import parse_node
from gamevalue.exceptions import CandidateFormatError
from gamevalue.hamiltonians.model import HamiltonianMetadata
from gamevalue.hamiltonians.model import HamiltonianModel
from gamevalue.hamiltonians.model import Provenance

__all__ = [
    "ClosedFormHamiltonian",
    "estimate_constants",
]

ESTIMATE_SAFETY = 1.05


class ClosedFormHamiltonian(HamiltonianModel):
    """
    A Hamiltonian given by an expression over t, x and s.
    """

    expr: ExprNode
    name: str = "hamiltonian"

    def evaluate(self, t: Any, x: np.ndarray, s: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        s = np.asarray(s, dtype=float)
        shape = np.broadcast_shapes(np.shape(t), x.shape[:-1], s.shape[:-1])
        return np.broadcast_to(self.expr.evaluate(t, x, s), shape).astype(float)

    def to_document(self) -> Dict[str, Any]:
        return {
            "n": self.frame.n,
            "t0": self.frame.t0,
            "theta0": self.frame.theta0,
            "expr": self.expr.to_document(),
            "gamma": self.metadata.gamma,
            "upsilon": self.metadata.upsilon,
        }

    @classmethod
    def from_document(
        cls, doc: Dict[str, Any], name: str = "hamiltonian", box: Tuple[float, float] = (-1.0, 1.0), seed: int = 0
    ) -> "ClosedFormHamiltonian":
        """
        Parse a closed-form Hamiltonian {"n", "expr", "t0"?, "theta0"?, "gamma"?, "upsilon"?}.

        Missing constants are estimated by sampling over the box.
        """
        if not isinstance(doc, dict) or "n" not in doc or "expr" not in doc:
            raise CandidateFormatError("A Hamiltonian document needs the keys 'n' and 'expr'.")
        try:
            frame = GameFrame(n=doc["n"], t0=doc.get("t0", 0.0), theta0=doc.get("theta0", 1.0))
        except ValueError as exception:
            raise CandidateFormatError(f"Invalid frame: {exception}") from exception
        expr = parse_node(doc["expr"], n=frame.n, hamiltonian=True)
        x_independent = not expr.uses(NodeKind.VAR_X)
        provisional = cls(
            frame=frame,
            expr=expr,
            name=name,
            metadata=HamiltonianMetadata(
                gamma=0.0, upsilon=0.0, provenance=Provenance.CLOSED_FORM, x_independent=x_independent, box=box
            ),
        )
        estimated = estimate_constants(provisional, box=box, seed=seed)
        gamma, upsilon = doc.get("gamma"), doc.get("upsilon")
        if gamma is None or upsilon is None:
            logger.warning(
                f"{name} declares no {'gamma' if gamma is None else 'upsilon'}: using sampled estimates "
                f"gamma={estimated.gamma:.4g}, upsilon={estimated.upsilon:.4g}."
            )
        metadata = estimated.model_copy(
            update={
                "gamma": float(gamma) if gamma is not None else estimated.gamma,
                "upsilon": float(upsilon) if upsilon is not None else estimated.upsilon,
            }
        )
        return provisional.model_copy(update={"metadata": metadata})

    @classmethod
    def from_file(
        cls, path: str | Path, box: Tuple[float, float] = (-1.0, 1.0), seed: int = 0
    ) -> "ClosedFormHamiltonian":
        path = Path(path)
        try:
            doc = orjson.loads(path.read_bytes())
        except orjson.JSONDecodeError as exception:
            raise CandidateFormatError(f"{path} is not valid JSON: {exception}") from exception
        return cls.from_document(doc, name=path.stem, box=box, seed=seed)


def estimate_constants(
    hamiltonian: HamiltonianModel, box: Tuple[float, float] = (-1.0, 1.0), draws: int = 2000, seed: int = 0
) -> HamiltonianMetadata:
    """
    Sample the growth, s-Lipschitz, x-Lipschitz and time-modulus constants of a Hamiltonian over a box.

    Estimates are inflated by a small safety factor since sampling only bounds them from below.
    """
    frame = hamiltonian.frame
    n = frame.n
    rng = np.random.default_rng(seed)
    t = rng.uniform(frame.t0, frame.theta0, draws)
    t_other = rng.uniform(frame.t0, frame.theta0, draws)
    x = rng.uniform(box[0], box[1], (draws, n))
    x_other = rng.uniform(box[0], box[1], (draws, n))
    s = rng.normal(size=(draws, n))
    s /= np.linalg.norm(s, axis=1, keepdims=True)
    s_other = rng.uniform(-2.0, 2.0, (draws, n))
    weight = 1.0 + np.linalg.norm(x, axis=1)

    values = hamiltonian.evaluate(t, x, s)
    gamma = float(np.max(np.abs(values) / weight))
    s_gap = np.linalg.norm(s - s_other, axis=1)
    valid = s_gap > 1e-12
    s_lipschitz = float(
        np.max(np.abs(values - hamiltonian.evaluate(t, x, s_other))[valid] / (weight[valid] * s_gap[valid]))
    )
    x_gap = np.linalg.norm(x - x_other, axis=1)
    lipschitz = float(np.max(np.abs(values - hamiltonian.evaluate(t, x_other, s)) / np.maximum(x_gap, 1e-12)))
    t_gap = np.abs(t - t_other)
    modulus = float(np.max(np.abs(values - hamiltonian.evaluate(t_other, x, s)) / np.maximum(t_gap, 1e-12)))
    return hamiltonian.metadata.model_copy(
        update={
            "gamma": ESTIMATE_SAFETY * gamma,
            "upsilon": ESTIMATE_SAFETY * max(gamma, s_lipschitz),
            "lipschitz": ESTIMATE_SAFETY * lipschitz,
            "modulus": ESTIMATE_SAFETY * modulus,
            "samples": draws,
            "box": box,
        }
    )
