import itertools
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np
import sympy as sp
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import PrivateAttr
from scipy.optimize import linprog

from gamevalue.candidates.expression import CandidateValue
from gamevalue.candidates.frame import GameFrame
from gamevalue.candidates.frame import Position
from gamevalue.exceptions import UncoveredPosition

__all__ = [
    "Hyperplane",
    "Piece",
    "PiecewiseForm",
    "SmoothPoint",
    "NonsmoothPoint",
    "PointClass",
    "TerminalGrowth",
    "decompose",
    "decomposition_box",
    "DEFAULT_DECOMPOSITION_BOX",
]

DEFAULT_DECOMPOSITION_BOX = (-1e3, 1e3)


def decomposition_box(box: Tuple[float, float]) -> Tuple[float, float]:
    """
    The smallest box containing both a run box and the default decomposition box.
    """
    return min(box[0], DEFAULT_DECOMPOSITION_BOX[0]), max(box[1], DEFAULT_DECOMPOSITION_BOX[1])


class Hyperplane(BaseModel):
    """
    Zero set of an abs argument over (t, x), with a unit normal.
    """

    normal: Tuple[float, ...]
    offset: float

    model_config = ConfigDict(frozen=True)

    def signed_distance(self, z: np.ndarray) -> np.ndarray:
        return np.asarray(z, dtype=float) @ np.asarray(self.normal) + self.offset


class Piece(BaseModel):
    """
    A polynomial piece of a candidate over the polyhedral region {signs[k] * g_k >= 0}.
    """

    index: int
    signs: Tuple[int, ...]
    polynomial: Any
    _value: Callable[..., Any] = PrivateAttr()
    _gradient: List[Callable[..., Any]] = PrivateAttr()

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def model_post_init(self, __context: Any) -> None:
        variables = self.polynomial.gens
        self._value = sp.lambdify(variables, self.polynomial.as_expr(), modules="numpy")
        self._gradient = [
            sp.lambdify(variables, self.polynomial.diff(variable).as_expr(), modules="numpy") for variable in variables
        ]

    @property
    def expression(self) -> sp.Expr:
        return self.polynomial.as_expr()

    def value(self, z: np.ndarray) -> float:
        return float(self._value(*np.asarray(z, dtype=float)))

    def values(self, z: np.ndarray) -> np.ndarray:
        """
        Evaluate on an array of (t, x) rows.
        """
        z = np.atleast_2d(np.asarray(z, dtype=float))
        return np.broadcast_to(self._value(*z.T), z.shape[:1]).astype(float)

    def gradient(self, z: np.ndarray) -> np.ndarray:
        """
        Full gradient (d/dt, d/dx1, ..., d/dxn) at a point.
        """
        z = np.asarray(z, dtype=float)
        return np.array([float(derivative(*z)) for derivative in self._gradient])

    def degree_in_x(self) -> int:
        x = self.polynomial.gens[1:]
        if not x:
            return 0
        return max((sum(monom[1:]) for monom in self.polynomial.monoms()), default=0)


class SmoothPoint(BaseModel):
    """
    A point off every abs boundary.
    """

    piece: int
    time_derivative: float
    gradient: Tuple[float, ...]


class NonsmoothPoint(BaseModel):
    """
    A point on at least one abs boundary.
    """

    pieces: Tuple[int, ...]
    boundaries: Tuple[int, ...]


PointClass = SmoothPoint | NonsmoothPoint


class TerminalGrowth(BaseModel):
    """
    Sampled growth |sigma(x)| / (1 + |x|) of the terminal payoff on expanding boxes.
    """

    radii: Tuple[float, ...]
    ratios: Tuple[float, ...]
    estimate: float
    degree: int
    growing: bool


class PiecewiseForm(BaseModel):
    """
    Exact decomposition of a candidate into polynomial pieces over sign regions.
    """

    frame: GameFrame
    candidate: CandidateValue
    boundaries: List[Hyperplane]
    pieces: List[Piece]
    box: Tuple[float, float]
    _normals: np.ndarray = PrivateAttr()
    _offsets: np.ndarray = PrivateAttr()
    _signs: np.ndarray = PrivateAttr()

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def model_post_init(self, __context: Any) -> None:
        dimension = self.frame.n + 1
        self._normals = np.array([b.normal for b in self.boundaries], dtype=float).reshape(-1, dimension)
        self._offsets = np.array([b.offset for b in self.boundaries], dtype=float)
        self._signs = np.array([p.signs for p in self.pieces], dtype=float).reshape(len(self.pieces), -1)

    @property
    def normals(self) -> np.ndarray:
        return self._normals

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    def distances(self, z: np.ndarray) -> np.ndarray:
        """
        Signed distances of a (t, x) point to every abs boundary.
        """
        return self._normals @ np.asarray(z, dtype=float) + self._offsets

    def region_constraints(self, piece: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        The region of a piece as {z : normals @ z + offsets >= 0}.
        """
        signs = self._signs[piece]
        return signs[:, None] * self._normals, signs * self._offsets

    def on_boundaries(self, p: Position, snap: float = 1e-9) -> np.ndarray:
        return np.flatnonzero(np.abs(self.distances(p.as_array())) <= snap)

    def active_pieces(self, p: Position, snap: float = 1e-9) -> List[int]:
        """
        Indices of the pieces whose region closure contains the position.
        """
        self.frame.check_position(p)
        distances = self.distances(p.as_array())
        boundary = np.abs(distances) <= snap
        agree = boundary[None, :] | (self._signs * distances[None, :] > 0)
        active = np.flatnonzero(agree.all(axis=1))
        if active.size == 0:
            raise UncoveredPosition(
                f"No piece covers {p}: sign regions were pruned inside the decomposition box {self.box}."
            )
        return [int(i) for i in active]

    def classify(self, p: Position, snap: float = 1e-9) -> PointClass:
        """
        Classify a position as smooth or nonsmooth.

        :param p: the position
        :param snap: points closer than this to a boundary lie on it
        :return: the point class
        """
        active = self.active_pieces(p, snap=snap)
        boundaries = self.on_boundaries(p, snap=snap)
        if boundaries.size == 0:
            gradient = self.pieces[active[0]].gradient(p.as_array())
            return SmoothPoint(piece=active[0], time_derivative=gradient[0], gradient=tuple(gradient[1:]))
        return NonsmoothPoint(pieces=tuple(active), boundaries=tuple(int(k) for k in boundaries))

    def evaluate(self, p: Position, snap: float = 1e-9) -> float:
        """
        Evaluate through the first active piece.
        """
        return self.pieces[self.active_pieces(p, snap=snap)[0]].value(p.as_array())

    def check_terminal_growth(self, radii: Tuple[float, ...] = (1.0, 2.0, 4.0, 8.0)) -> TerminalGrowth:
        """
        Sample |sigma(x)| / (1 + |x|) on expanding boxes and flag superlinear growth.
        """
        n = self.frame.n
        count = 9 if n <= 2 else 5
        ratios = []
        for radius in radii:
            axes = [np.linspace(-radius, radius, count)] * n
            x = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
            sigma = self.candidate.evaluate_array(self.frame.theta0, x)
            ratios.append(float(np.max(np.abs(sigma) / (1.0 + np.linalg.norm(x, axis=1)))))
        degree = max(piece.degree_in_x() for piece in self.pieces)
        growing = ratios[-1] > 2.0 * max(ratios[0], 1e-12) and ratios[-1] > ratios[-2] * 1.5
        if degree > 1:
            logger.warning(f"The candidate has degree {degree} in x: the terminal payoff may grow superlinearly.")
        if growing:
            logger.warning(f"The terminal payoff growth ratios {ratios} keep increasing.")
        return TerminalGrowth(
            radii=tuple(radii), ratios=tuple(ratios), estimate=max(ratios), degree=degree, growing=growing
        )


def _abs_hyperplanes(
    expr: sp.Expr, variables: Tuple[sp.Symbol, ...]
) -> Tuple[List[Hyperplane], Dict[sp.Expr, Tuple[int, int]]]:
    """
    Collect the distinct zero sets of the abs atoms.

    :return: the hyperplanes and, per abs atom, (hyperplane index, orientation of its argument)
    """
    hyperplanes: List[Hyperplane] = []
    keys: Dict[Tuple[sp.Rational, ...], int] = {}
    atoms: Dict[sp.Expr, Tuple[int, int]] = {}
    for atom in sorted(expr.atoms(sp.Abs), key=sp.default_sort_key):
        polynomial = sp.Poly(atom.args[0], *variables)
        coefficients = [polynomial.coeff_monomial(v) for v in variables]
        constant = polynomial.coeff_monomial(1)
        leading = next((c for c in coefficients if c != 0), None)
        if leading is None:
            atoms[atom] = (-1, 1 if constant >= 0 else -1)
            continue
        key = tuple(c / leading for c in (*coefficients, constant))
        if key not in keys:
            orientation = 1 if leading > 0 else -1
            normal = np.array([float(c * orientation) for c in coefficients])
            norm = float(np.linalg.norm(normal))
            keys[key] = len(hyperplanes)
            hyperplanes.append(
                Hyperplane(normal=tuple(normal / norm), offset=float(constant * orientation) / norm),
            )
        atoms[atom] = (keys[key], 1 if leading > 0 else -1)
    return hyperplanes, atoms


def _feasible(
    normals: np.ndarray,
    offsets: np.ndarray,
    signs: Tuple[int, ...],
    bounds: List[Tuple[float, float]],
    tolerance: float,
) -> bool:
    """
    Check that a sign region has nonempty interior inside the box with a max-margin linear program.
    """
    if not signs:
        return True
    s = np.asarray(signs, dtype=float)
    dimension = normals.shape[1]
    a_ub = np.hstack([-s[:, None] * normals, np.ones((len(signs), 1))])
    b_ub = s * offsets
    cost = np.zeros(dimension + 1)
    cost[-1] = -1.0
    result = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=[*bounds, (None, 1.0)], method="highs")
    return bool(result.status == 0 and -result.fun > tolerance)


def decompose(
    candidate: CandidateValue,
    box: Tuple[float, float] = DEFAULT_DECOMPOSITION_BOX,
    feasibility: float = 1e-9,
) -> PiecewiseForm:
    """
    Decompose a candidate into one polynomial piece per feasible sign vector of its abs arguments.

    :param candidate: the parsed candidate
    :param box: spatial bounds used to prune empty sign regions; positions with a coordinate outside them may
        fall in a pruned region and raise UncoveredPosition, see decomposition_box
    :param feasibility: minimal inscribed margin of a kept region
    :return: the piecewise form
    """
    frame = candidate.frame
    expr, t, x = candidate.to_sympy()
    variables = (t, *x)
    hyperplanes, atoms = _abs_hyperplanes(expr, variables)
    normals = np.array([h.normal for h in hyperplanes], dtype=float).reshape(-1, frame.n + 1)
    offsets = np.array([h.offset for h in hyperplanes], dtype=float)
    bounds = [(frame.t0, frame.theta0)] + [box] * frame.n

    pieces: List[Piece] = []
    for signs in itertools.product((1, -1), repeat=len(hyperplanes)):
        if not _feasible(normals, offsets, signs, bounds, feasibility):
            continue
        replacement = {}
        for atom, (k, orientation) in atoms.items():
            sign = orientation if k < 0 else signs[k] * orientation
            replacement[atom] = sign * atom.args[0]
        polynomial = sp.Poly(sp.expand(expr.xreplace(replacement)), *variables, domain=sp.QQ)
        pieces.append(Piece(index=len(pieces), signs=signs, polynomial=polynomial))
    logger.debug(
        f"Decomposed {candidate.name} into {len(pieces)} pieces over {len(hyperplanes)} abs boundaries "
        f"({2 ** len(hyperplanes) - len(pieces)} sign vectors pruned)."
    )
    return PiecewiseForm(
        frame=frame,
        candidate=candidate,
        boundaries=hyperplanes,
        pieces=pieces,
        box=box,
    )
