from enum import Enum
from typing import Any
from typing import Dict
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.games.controls import ControlSet
from gamevalue.games.controls import ControlSetKind
from gamevalue.hamiltonians import HamiltonianModel

__all__ = [
    "GameKind",
    "GameDynamics",
]


class GameKind(str, Enum):
    MAXMIN = "maxmin"
    MINMAX = "minmax"
    ISAACS_1D = "isaacs1d"


class GameDynamics(BaseModel):
    """
    Dynamics f(t, x, u, v) = a + b y' + c z' affine in the secondary controls, u = (y, y') and v = (z, z').

    With U = upsilon (1 + |x|) and H the Hamiltonian:

    - maxmin: a = U y, b = U (1 + <y, z>), c = H(t, x, z) + U
    - minmax: a = U z, b = U - H(t, x, y), c = U (1 - <y, z>)
    - isaacs1d: the maxmin formula over the finite sets {-1, 1} x {-1, 1}
    """

    kind: GameKind
    hamiltonian: HamiltonianModel
    p: ControlSet
    q: ControlSet
    upsilon: float
    growth_constant: float
    derived: bool = False

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def n(self) -> int:
        return self.hamiltonian.frame.n

    def coefficients(
        self, t: Any, x: np.ndarray, y: np.ndarray, z: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        The vector a and the scalars b, c on broadcastable arrays with the spatial axis last.
        """
        x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
        speed = self.upsilon * (1.0 + np.linalg.norm(x, axis=-1))
        inner = np.sum(y * z, axis=-1)
        shape = np.broadcast_shapes(np.shape(t), x.shape[:-1], y.shape[:-1], z.shape[:-1])
        if self.kind == GameKind.MINMAX:
            a = speed[..., None] * z
            b = speed - self.hamiltonian.evaluate(t, x, y)
            c = speed * (1.0 - inner)
        else:
            a = speed[..., None] * y
            b = speed * (1.0 + inner)
            c = self.hamiltonian.evaluate(t, x, z) + speed
        return (
            np.broadcast_to(a, (*shape, self.n)),
            np.broadcast_to(b, shape),
            np.broadcast_to(c, shape),
        )

    def velocity(
        self, t: Any, x: np.ndarray, y: np.ndarray, y_secondary: np.ndarray, z: np.ndarray, z_secondary: np.ndarray
    ) -> np.ndarray:
        """
        f(t, x, (y, y'), (z, z')).
        """
        a, b, c = self.coefficients(t, x, y, z)
        return a + b[..., None] * np.asarray(y_secondary, dtype=float) + c[..., None] * np.asarray(z_secondary)

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "upsilon": self.upsilon,
            "growth_constant": self.growth_constant,
            "n": self.n,
            "P": self.p.describe(),
            "Q": self.q.describe(),
            "derived_formula": self.derived,
        }

    @classmethod
    def from_document(cls, doc: Dict[str, Any], hamiltonian: HamiltonianModel) -> "GameDynamics":
        """
        Rebuild the dynamics from their description and the Hamiltonian they were built on.
        """
        return cls(
            kind=GameKind(doc["kind"]),
            hamiltonian=hamiltonian,
            p=ControlSet(kind=ControlSetKind(doc["P"]["kind"]), dimension=doc["P"]["dimension"]),
            q=ControlSet(kind=ControlSetKind(doc["Q"]["kind"]), dimension=doc["Q"]["dimension"]),
            upsilon=doc["upsilon"],
            growth_constant=doc["growth_constant"],
            derived=doc.get("derived_formula", False),
        )
