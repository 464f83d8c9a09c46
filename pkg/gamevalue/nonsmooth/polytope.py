import itertools
from enum import Enum
from typing import List
from typing import Tuple

import numpy as np
from pydantic import BaseModel
from scipy.linalg import null_space
from scipy.spatial import ConvexHull
from scipy.spatial import QhullError
from scipy.stats import norm
from scipy.stats import qmc

__all__ = [
    "DiniKind",
    "DiniPolytope",
    "ClarkePolytope",
    "hull_vertices",
    "enumerate_vertices",
    "cone_generators",
    "unit_directions",
    "unique_rows",
    "simplex_weights",
    "in_halfspaces",
]


def unique_rows(points: np.ndarray, tolerance: float = 1e-9) -> np.ndarray:
    """
    Drop rows closer than the tolerance to an earlier row, keeping the first occurrence.
    """
    points = np.asarray(points, dtype=float)
    kept: list = []
    for point in points:
        if all(np.max(np.abs(point - other)) > tolerance for other in kept):
            kept.append(point)
    if not kept:
        return np.empty((0, points.shape[-1] if points.ndim == 2 else 0))
    return np.array(kept)


def _lexicographic(points: np.ndarray) -> np.ndarray:
    if len(points) == 0:
        return points
    return points[np.lexsort(points.T[::-1])]


def hull_vertices(points: np.ndarray, tolerance: float = 1e-9) -> np.ndarray:
    """
    Irredundant vertices of the convex hull of a point set of any affine dimension.

    :param points: array of shape (count, dimension)
    :param tolerance: rank and deduplication tolerance
    :return: the vertices in lexicographic order
    """
    points = unique_rows(points, tolerance)
    if len(points) <= 1:
        return points
    origin = points.mean(axis=0)
    centered = points - origin
    _, singular, basis = np.linalg.svd(centered, full_matrices=False)
    rank = int(np.sum(singular > tolerance * max(1.0, float(singular[0]))))
    if rank == 0:
        return points[:1]
    coordinates = centered @ basis[:rank].T
    if rank == 1:
        indices = [int(np.argmin(coordinates[:, 0])), int(np.argmax(coordinates[:, 0]))]
        return _lexicographic(points[sorted(set(indices))])
    try:
        hull = ConvexHull(coordinates)
    except QhullError:
        hull = ConvexHull(coordinates, qhull_options="QJ")
    return _lexicographic(points[np.sort(hull.vertices)])


def enumerate_vertices(a: np.ndarray, b: np.ndarray, tolerance: float = 1e-9) -> np.ndarray:
    """
    Vertices of the bounded polyhedron {w : a @ w <= b} by basis enumeration.

    Every subset of ``dimension`` constraints with a regular matrix is solved and kept when feasible,
    which also covers polytopes of lower affine dimension.

    :return: the vertices, an empty array when the polyhedron is empty
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    dimension = a.shape[1]
    norms = np.linalg.norm(a, axis=1)
    zero = norms <= tolerance
    if np.any(b[zero] < -tolerance):
        return np.empty((0, dimension))
    a = a[~zero] / norms[~zero, None]
    b = b[~zero] / norms[~zero]
    if len(a) < dimension:
        return np.empty((0, dimension))
    subsets = np.array(list(itertools.combinations(range(len(a)), dimension)))
    matrices = a[subsets]
    regular = np.abs(np.linalg.det(matrices)) > 1e-10
    if not np.any(regular):
        return np.empty((0, dimension))
    solutions = np.linalg.solve(matrices[regular], b[subsets[regular]][..., None])[..., 0]
    feasible = np.all(a @ solutions.T <= b[:, None] + tolerance, axis=0)
    if not np.any(feasible):
        return np.empty((0, dimension))
    return hull_vertices(solutions[feasible], tolerance)


def cone_generators(rows: np.ndarray, dimension: int, tolerance: float = 1e-9) -> np.ndarray:
    """
    Generators of the polyhedral cone {d : rows @ d >= 0}: both signs of a lineality basis
    and the extreme rays of the pointed part.
    """
    rows = np.asarray(rows, dtype=float).reshape(-1, dimension)
    if len(rows) == 0:
        identity = np.eye(dimension)
        return np.vstack([identity, -identity])
    lineality = null_space(rows)
    generators = [lineality.T, -lineality.T]
    pointed = dimension - lineality.shape[1]
    if pointed == 0:
        return np.vstack(generators)
    complement = null_space(lineality.T) if lineality.shape[1] else np.eye(dimension)
    projected = rows @ complement
    rays = []
    for subset in itertools.combinations(range(len(rows)), pointed - 1):
        kernel = null_space(projected[list(subset)]) if subset else np.eye(pointed)
        if kernel.shape[1] != 1:
            continue
        for sign in (1.0, -1.0):
            direction = complement @ (sign * kernel[:, 0])
            if np.all(rows @ direction >= -tolerance):
                rays.append(direction / np.linalg.norm(direction))
    if rays:
        generators.append(unique_rows(np.array(rays), tolerance))
    return np.vstack(generators)


def unit_directions(dimension: int, count: int, seed: int = 0) -> np.ndarray:
    """
    Quasi-uniform unit directions, the coordinate axes of both signs first.

    :param dimension: the ambient dimension
    :param count: the number of directions after the axes
    :param seed: seed of the scrambled Sobol sequence
    """
    identity = np.eye(dimension)
    axes = np.vstack([identity, -identity])
    if dimension == 1:
        return axes
    if dimension == 2:
        angles = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        return np.vstack([axes, np.column_stack([np.cos(angles), np.sin(angles)])])
    sampler = qmc.Sobol(d=dimension, scramble=True, seed=seed)
    uniform = np.clip(sampler.random(count), 1e-12, 1.0 - 1e-12)
    gaussian = norm.ppf(uniform)
    return np.vstack([axes, gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)])


def simplex_weights(count: int, samples: int, seed: int) -> np.ndarray:
    """
    Deterministic random convex weights over ``count`` points.
    """
    if count == 0 or samples == 0:
        return np.empty((0, count))
    return np.random.default_rng(seed).dirichlet(np.ones(count), size=samples)


def in_halfspaces(a: np.ndarray, b: np.ndarray, w: np.ndarray, tolerance: float) -> bool:
    return bool(np.all(a @ np.asarray(w, dtype=float) <= b + tolerance))


class DiniKind(str, Enum):
    SUB = "sub"
    SUPER = "super"


class DiniPolytope(BaseModel):
    """
    A Dini sub- or superdifferential as vertices over (a, s), with its half-space description a @ w <= b.
    """

    kind: DiniKind
    vertices: List[Tuple[float, ...]]
    a: List[Tuple[float, ...]] = []
    b: List[float] = []

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0

    def vertex_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float).reshape(len(self.vertices), -1)

    def contains(self, w: np.ndarray, tolerance: float = 1e-9) -> bool:
        """
        Exact membership through the half-space description.
        """
        if self.empty:
            return False
        return in_halfspaces(np.array(self.a, dtype=float), np.array(self.b, dtype=float), w, tolerance)

    def s_projection(self, tolerance: float = 1e-9) -> np.ndarray:
        """
        Vertices of the projection onto the spatial component s.
        """
        if self.empty:
            return np.empty((0, 0))
        return hull_vertices(self.vertex_array()[:, 1:], tolerance)


class ClarkePolytope(BaseModel):
    """
    The convex hull of the pairs (-h, s) over the limiting gradients.
    """

    vertices: List[Tuple[float, ...]]

    def vertex_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    def sample(self, count: int, seed: int = 0) -> np.ndarray:
        """
        Random convex combinations of the vertices.
        """
        vertices = self.vertex_array()
        return simplex_weights(len(vertices), count, seed) @ vertices
