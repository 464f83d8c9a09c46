from typing import List
from typing import Tuple

import numpy as np
from loguru import logger

from gamevalue.candidates import PiecewiseForm
from gamevalue.candidates import Position
from gamevalue.conf import SamplingSettings
from gamevalue.conf import Tolerances
from gamevalue.exceptions import OutsideTimeInterval
from gamevalue.exceptions import UnsupportedDimension
from gamevalue.nonsmooth.limiting import CJClass
from gamevalue.nonsmooth.limiting import LimitingData
from gamevalue.nonsmooth.limiting import limiting_gradients
from gamevalue.nonsmooth.polytope import ClarkePolytope
from gamevalue.nonsmooth.polytope import DiniKind
from gamevalue.nonsmooth.polytope import DiniPolytope
from gamevalue.nonsmooth.polytope import cone_generators
from gamevalue.nonsmooth.polytope import enumerate_vertices
from gamevalue.nonsmooth.polytope import hull_vertices
from gamevalue.nonsmooth.polytope import simplex_weights
from gamevalue.nonsmooth.polytope import unique_rows

__all__ = [
    "tangent_cones",
    "directional_derivative",
    "directional_derivatives",
    "dini_polytope",
    "clarke",
    "classify_cj",
    "limiting_data",
]


def _require_interior(pw: PiecewiseForm, p: Position) -> None:
    if not pw.frame.contains_time(p.t, strict=True):
        raise OutsideTimeInterval(
            f"t={p.t} must lie strictly inside ({pw.frame.t0}, {pw.frame.theta0}) for one-sided derivatives."
        )


def _require_dimension(pw: PiecewiseForm, max_dimension: int) -> None:
    if pw.frame.n > max_dimension:
        raise UnsupportedDimension(
            f"Exact vertex enumeration supports n <= {max_dimension}, the candidate has n = {pw.frame.n}."
        )


def tangent_cones(pw: PiecewiseForm, p: Position, snap: float = 1e-9) -> List[Tuple[int, np.ndarray]]:
    """
    The tangent cone {d : rows @ d >= 0} of every piece region active at a position.

    :return: (piece index, cone rows) pairs
    """
    boundaries = pw.on_boundaries(p, snap=snap)
    cones = []
    for index in pw.active_pieces(p, snap=snap):
        normals, _ = pw.region_constraints(index)
        cones.append((index, normals[boundaries]))
    return cones


def directional_derivatives(
    pw: PiecewiseForm, p: Position, directions: np.ndarray, snap: float = 1e-9
) -> np.ndarray:
    """
    One-sided derivatives along many (tau, g) directions at once.

    Each direction is assigned to the active piece whose cone contains it with the largest margin;
    ties go to the first piece, which is harmless since the pieces agree on shared cone faces.
    """
    _require_interior(pw, p)
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    z = p.as_array()
    cones = tangent_cones(pw, p, snap=snap)
    slack = np.full((len(cones), len(directions)), np.inf)
    values = np.empty((len(cones), len(directions)))
    for k, (index, rows) in enumerate(cones):
        if len(rows):
            slack[k] = (directions @ rows.T).min(axis=1)
        values[k] = directions @ pw.pieces[index].gradient(z)
    chosen = np.argmax(slack, axis=0)
    return values[chosen, np.arange(len(directions))]


def directional_derivative(pw: PiecewiseForm, p: Position, d: np.ndarray, snap: float = 1e-9) -> float:
    """
    The one-sided derivative of the candidate at a position along d = (tau, g).

    :param pw: the piecewise form
    :param p: a position with t strictly inside the time interval
    :param d: a nonzero direction
    :return: the derivative
    """
    d = np.asarray(d, dtype=float)
    if not np.any(d):
        raise ValueError("The direction must be nonzero.")
    return float(directional_derivatives(pw, p, d[None, :], snap=snap)[0])


def dini_polytope(
    pw: PiecewiseForm,
    p: Position,
    kind: DiniKind,
    snap: float = 1e-9,
    tolerance: float = 1e-9,
    max_dimension: int = 3,
) -> DiniPolytope:
    """
    The Dini subdifferential (kind sub) or superdifferential (kind super) at a position.

    Every active piece contributes w . r <= grad . r (>= for super) on the generators r of its tangent cone;
    the intersection is vertex-enumerated.

    :param pw: the piecewise form
    :param p: a position with t strictly inside the time interval
    :param kind: sub or super
    :param snap: boundary snapping distance
    :param tolerance: feasibility tolerance of the vertex enumeration
    :param max_dimension: largest supported spatial dimension
    :return: the polytope, possibly empty
    """
    _require_dimension(pw, max_dimension)
    _require_interior(pw, p)
    dimension = pw.frame.n + 1
    z = p.as_array()
    sign = 1.0 if kind == DiniKind.SUB else -1.0
    a_rows, b_rows = [], []
    for index, rows in tangent_cones(pw, p, snap=snap):
        generators = cone_generators(rows, dimension, tolerance)
        a_rows.append(sign * generators)
        b_rows.append(sign * (generators @ pw.pieces[index].gradient(z)))
    system = unique_rows(np.hstack([np.vstack(a_rows), np.concatenate(b_rows)[:, None]]), tolerance)
    a, b = system[:, :-1], system[:, -1]
    vertices = enumerate_vertices(a, b, tolerance)
    return DiniPolytope(
        kind=kind,
        vertices=[tuple(float(v) for v in vertex) for vertex in vertices],
        a=[tuple(float(v) for v in row) for row in a],
        b=[float(v) for v in b],
    )


def clarke(ld: LimitingData, tolerance: float = 1e-9) -> ClarkePolytope:
    """
    The convex hull of (-h, s) over the limiting gradients.
    """
    points = np.column_stack([-ld.h_values(), ld.gradients()])
    return ClarkePolytope(vertices=[tuple(float(v) for v in vertex) for vertex in hull_vertices(points, tolerance)])


def classify_cj(ld: LimitingData, sub: DiniPolytope, sup: DiniPolytope) -> Tuple[CJClass, bool]:
    """
    Classify a position from its limiting gradients and Dini sets.

    :return: the class and whether both Dini sets are nonempty at a nonsmooth position
    """
    if ld.smooth:
        return CJClass.SMOOTH, False
    if not sub.empty and not sup.empty:
        logger.warning(
            f"Both Dini sets are nonempty at the nonsmooth position {ld.position}: the decomposition is inconsistent."
        )
        return CJClass.NEITHER, True
    if not sub.empty:
        return CJClass.CJMINUS, False
    if not sup.empty:
        return CJClass.CJPLUS, False
    return CJClass.NEITHER, False


def _complement(
    projection: np.ndarray, gradients: np.ndarray, samples: int, seed: int, merge: float
) -> List[Tuple[float, ...]]:
    points = np.vstack([projection, simplex_weights(len(projection), samples, seed) @ projection])
    kept = [
        point for point in unique_rows(points, merge) if np.min(np.max(np.abs(gradients - point), axis=1)) > merge
    ]
    return [tuple(float(v) for v in point) for point in kept]


def limiting_data(
    pw: PiecewiseForm,
    p: Position,
    tolerances: Tolerances | None = None,
    sampling: SamplingSettings | None = None,
    seed: int = 0,
    max_dimension: int = 3,
) -> LimitingData:
    """
    Complete limiting data at a position: limiting gradients, Dini sets, class and the complement set.

    The complement is described by the vertices of the s-projection of the nonempty Dini set and sampled
    at those vertices plus random interior points, the limiting gradients removed.

    :param pw: the piecewise form
    :param p: a position with t strictly inside the time interval
    :param tolerances: numerical tolerances
    :param sampling: sampling densities
    :param seed: seed of the interior samples
    :param max_dimension: largest supported spatial dimension
    :return: the limiting data
    """
    tolerances = tolerances or Tolerances()
    sampling = sampling or SamplingSettings()
    data = limiting_gradients(pw, p, snap=tolerances.snap, merge=tolerances.merge)
    sub, sup = (
        dini_polytope(
            pw, p, kind, snap=tolerances.snap, tolerance=tolerances.feasibility, max_dimension=max_dimension
        )
        for kind in (DiniKind.SUB, DiniKind.SUPER)
    )
    cj_class, inconsistent = classify_cj(data, sub, sup)
    e2: List[Tuple[float, ...]] = []
    e2_vertices: List[Tuple[float, ...]] = []
    if cj_class in (CJClass.CJMINUS, CJClass.CJPLUS):
        source = sub if cj_class == CJClass.CJMINUS else sup
        projection = source.s_projection(tolerances.feasibility)
        e2_vertices = [tuple(float(v) for v in vertex) for vertex in projection]
        e2 = _complement(projection, data.gradients(), sampling.e2_interior_samples, seed, tolerances.merge)
    logger.debug(f"{p}: {len(data.e1)} limiting gradients, class {cj_class.value}, {len(e2)} complement samples.")
    return data.model_copy(
        update={
            "cj_class": cj_class,
            "inconsistent": inconsistent,
            "e2": e2,
            "e2_vertices": e2_vertices,
            "sub": sub,
            "sup": sup,
        }
    )
