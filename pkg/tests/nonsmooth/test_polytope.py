import numpy as np

from gamevalue.nonsmooth import DiniKind
from gamevalue.nonsmooth import DiniPolytope
from gamevalue.nonsmooth import enumerate_vertices
from gamevalue.nonsmooth import hull_vertices
from gamevalue.nonsmooth import simplex_weights
from gamevalue.nonsmooth import unit_directions


def test_hull_vertices_should_drop_interior_and_duplicate_points():
    points = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [1.0, 1.0]])

    vertices = hull_vertices(points)

    np.testing.assert_allclose(vertices, [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])


def test_hull_vertices_should_handle_collinear_points_in_space():
    points = np.array([[0.0, 0.0, 0.0], [0.5, 0.5, 0.5], [1.0, 1.0, 1.0], [0.25, 0.25, 0.25]])

    vertices = hull_vertices(points)

    np.testing.assert_allclose(vertices, [[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]])


def test_enumerate_vertices_should_find_the_cube_corners():
    a = np.vstack([np.eye(3), -np.eye(3)])
    b = np.ones(6)

    vertices = enumerate_vertices(a, b)

    assert len(vertices) == 8
    np.testing.assert_allclose(np.abs(vertices), 1.0)


def test_enumerate_vertices_should_return_a_flat_segment():
    a = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    b = np.array([1.0, 1.0, 2.0, -2.0])

    vertices = enumerate_vertices(a, b)

    np.testing.assert_allclose(vertices, [[-1.0, 2.0], [1.0, 2.0]])


def test_enumerate_vertices_should_detect_empty_polyhedra():
    a = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    b = np.array([1.0, -2.0, 1.0, 1.0])

    assert enumerate_vertices(a, b).shape == (0, 2)


def test_dini_polytope_contains_should_use_its_half_spaces():
    polytope = DiniPolytope(
        kind=DiniKind.SUB,
        vertices=[(0.0,), (1.0,)],
        a=[(1.0,), (-1.0,)],
        b=[1.0, 0.0],
    )

    assert polytope.contains(np.array([0.5]))
    assert polytope.contains(np.array([1.0 + 1e-12]))
    assert not polytope.contains(np.array([1.1]))
    assert not DiniPolytope(kind=DiniKind.SUPER, vertices=[]).contains(np.array([0.0]))


def test_unit_directions_should_start_with_the_axes():
    directions = unit_directions(3, 100, seed=0)

    assert directions.shape == (106, 3)
    np.testing.assert_allclose(directions[:6], np.vstack([np.eye(3), -np.eye(3)]))
    np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0)


def test_simplex_weights_should_be_reproducible_convex_weights():
    weights = simplex_weights(4, 10, seed=1)

    assert weights.shape == (10, 4)
    assert np.all(weights >= 0)
    np.testing.assert_allclose(weights.sum(axis=1), 1.0)
    np.testing.assert_array_equal(weights, simplex_weights(4, 10, seed=1))
