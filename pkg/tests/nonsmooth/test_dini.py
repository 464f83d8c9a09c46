import numpy as np
import pytest

from gamevalue.candidates import CandidateValue
from gamevalue.candidates import Position
from gamevalue.candidates import decompose
from gamevalue.conf import SamplingSettings
from gamevalue.exceptions import OutsideTimeInterval
from gamevalue.exceptions import UnsupportedDimension
from gamevalue.nonsmooth import CJClass
from gamevalue.nonsmooth import DiniKind
from gamevalue.nonsmooth import clarke
from gamevalue.nonsmooth import dini_polytope
from gamevalue.nonsmooth import directional_derivative
from gamevalue.nonsmooth import directional_derivatives
from gamevalue.nonsmooth import limiting_data
from gamevalue.nonsmooth import limiting_gradients
from gamevalue.nonsmooth import unit_directions


def test_limiting_gradients_at_the_origin_should_list_four_gradients(phi1_form):
    data = limiting_gradients(phi1_form, Position.of(0.5, 0.0, 0.0))

    assert sorted(entry.s for entry in data.e1) == [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
    assert all(entry.h == pytest.approx(-1.0) for entry in data.e1)
    assert not any(entry.violation for entry in data.e1)


def test_directional_derivative_should_follow_the_kinks(phi1_form):
    p = Position.of(0.5, 0.0, 0.5)

    assert directional_derivative(phi1_form, p, np.array([0.0, 1.0, 0.0])) == pytest.approx(1.0)
    assert directional_derivative(phi1_form, p, np.array([0.0, -1.0, 0.0])) == pytest.approx(1.0)
    assert directional_derivative(phi1_form, p, np.array([0.0, 0.0, 1.0])) == pytest.approx(-1.0)
    assert directional_derivative(phi1_form, p, np.array([1.0, 0.0, 0.0])) == pytest.approx(1.0)


def test_directional_derivative_should_reject_the_interval_ends(phi1_form):
    with pytest.raises(OutsideTimeInterval):
        directional_derivative(phi1_form, Position.of(1.0, 0.0, 0.5), np.array([1.0, 0.0, 0.0]))


def test_subdifferential_on_the_x1_axis_should_be_a_segment(phi1_form):
    p = Position.of(0.5, 0.0, 0.5)

    sub = dini_polytope(phi1_form, p, DiniKind.SUB)
    sup = dini_polytope(phi1_form, p, DiniKind.SUPER)

    np.testing.assert_allclose(sub.vertex_array(), [[1.0, -1.0, -1.0], [1.0, 1.0, -1.0]], atol=1e-9)
    assert sup.empty


def test_superdifferential_on_the_x2_axis_should_be_a_segment(phi1_form):
    p = Position.of(0.5, -0.5, 0.0)

    sub = dini_polytope(phi1_form, p, DiniKind.SUB)
    sup = dini_polytope(phi1_form, p, DiniKind.SUPER)

    assert sub.empty
    np.testing.assert_allclose(sup.vertex_array(), [[1.0, -1.0, -1.0], [1.0, -1.0, 1.0]], atol=1e-9)


def test_limiting_data_should_classify_the_strata_of_phi1(phi1_form):
    settings = SamplingSettings(e2_interior_samples=20)

    edge = limiting_data(phi1_form, Position.of(0.5, 0.0, 0.5), sampling=settings)
    origin = limiting_data(phi1_form, Position.of(0.5, 0.0, 0.0), sampling=settings)
    smooth = limiting_data(phi1_form, Position.of(0.5, 0.5, 0.5), sampling=settings)

    assert edge.cj_class == CJClass.CJMINUS
    np.testing.assert_allclose(sorted(edge.e2_vertices), [[-1.0, -1.0], [1.0, -1.0]], atol=1e-9)
    assert all(abs(s[0]) < 1.0 and s[1] == pytest.approx(-1.0) for s in edge.e2)
    assert origin.cj_class == CJClass.NEITHER
    assert origin.sub.empty and origin.sup.empty
    assert origin.e2 == []
    assert smooth.cj_class == CJClass.SMOOTH


@pytest.mark.slow
def test_dini_vertices_should_satisfy_the_directional_inequalities(phi1, phi2):
    directions = unit_directions(3, 4000, seed=1)
    rng = np.random.default_rng(7)
    for candidate in (phi1, phi2):
        form = decompose(candidate)
        positions = [Position.of(rng.uniform(0.05, 0.95), *rng.uniform(-1, 1, 2)) for _ in range(51)]
        positions += [Position.of(rng.uniform(0.05, 0.95), 0.0, rng.uniform(-1, 1)) for _ in range(24)]
        positions += [Position.of(rng.uniform(0.05, 0.95), rng.uniform(-1, 1), 0.0) for _ in range(24)]
        positions += [Position.of(0.5, 0.0, 0.0)]
        for p in positions:
            derivatives = directional_derivatives(form, p, directions)
            sub = dini_polytope(form, p, DiniKind.SUB)
            sup = dini_polytope(form, p, DiniKind.SUPER)
            for vertex in sub.vertex_array():
                assert np.min(derivatives - directions @ vertex) >= -1e-9
            for vertex in sup.vertex_array():
                assert np.max(derivatives - directions @ vertex) <= 1e-9


@pytest.mark.parametrize("x", [(0.0, 0.0), (-0.5, 0.0), (0.5, 0.0)])
def test_clarke_points_outside_the_subdifferential_should_violate_some_direction(phi1_form, x):
    p = Position.of(0.5, *x)
    sub = dini_polytope(phi1_form, p, DiniKind.SUB)
    directions = unit_directions(3, 4000, seed=2)
    derivatives = directional_derivatives(phi1_form, p, directions)

    outside = [w for w in clarke(limiting_gradients(phi1_form, p)).sample(50, seed=3) if not sub.contains(w)]

    assert len(outside) == 50
    for w in outside:
        assert np.min(derivatives - directions @ w) < -1e-9


def test_points_off_the_subdifferential_segment_should_violate_some_direction(phi1_form):
    p = Position.of(0.5, 0.0, 0.5)
    sub = dini_polytope(phi1_form, p, DiniKind.SUB)
    directions = unit_directions(3, 4000, seed=2)
    derivatives = directional_derivatives(phi1_form, p, directions)
    rng = np.random.default_rng(5)

    outside = [np.array([1.0 + rng.uniform(0.01, 0.5), rng.uniform(-1, 1), -1.0]) for _ in range(50)]

    for w in outside:
        assert not sub.contains(w)
        assert np.min(derivatives - directions @ w) < -1e-9


def test_dini_polytope_should_reject_large_dimensions():
    args = [{"op": "abs", "args": [{"var": "x", "i": i}]} for i in range(1, 5)]
    form = decompose(CandidateValue.from_document({"n": 4, "expr": {"op": "add", "args": args}}))

    with pytest.raises(UnsupportedDimension):
        dini_polytope(form, Position.of(0.5, 0.0, 0.0, 0.0, 0.0), DiniKind.SUB, max_dimension=3)
