import numpy as np
import pytest

from gamevalue.candidates import CandidateValue
from gamevalue.candidates import NonsmoothPoint
from gamevalue.candidates import Position
from gamevalue.candidates import SmoothPoint
from gamevalue.candidates import decompose
from gamevalue.candidates import decomposition_box
from gamevalue.exceptions import DimensionMismatch
from gamevalue.exceptions import OutsideTimeInterval
from gamevalue.exceptions import UncoveredPosition


def test_decompose_should_give_one_piece_per_sign_region(phi1_form):
    assert len(phi1_form.boundaries) == 2
    assert len(phi1_form.pieces) == 4
    assert sorted(piece.signs for piece in phi1_form.pieces) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


def test_pieces_should_match_the_candidate_on_their_regions(phi1, phi1_form):
    rng = np.random.default_rng(3)
    for _ in range(50):
        p = Position.of(rng.uniform(0, 1), *rng.uniform(-1, 1, 2))

        assert phi1_form.evaluate(p) == pytest.approx(phi1.evaluate(p), abs=1e-12)


def test_decompose_should_merge_proportional_abs_arguments():
    document = {
        "n": 1,
        "expr": {
            "op": "add",
            "args": [
                {"op": "abs", "args": [{"var": "x", "i": 1}]},
                {"op": "abs", "args": [{"op": "mul", "args": [{"const": -2}, {"var": "x", "i": 1}]}]},
            ],
        },
    }
    candidate = CandidateValue.from_document(document)

    form = decompose(candidate)

    assert len(form.boundaries) == 1
    assert len(form.pieces) == 2
    assert form.evaluate(Position.of(0.5, -0.5)) == pytest.approx(1.5)


def test_decompose_should_prune_sign_vectors_without_interior():
    x = {"var": "x", "i": 1}
    document = {
        "n": 1,
        "expr": {
            "op": "add",
            "args": [{"op": "abs", "args": [x]}, {"op": "abs", "args": [{"op": "sub", "args": [x, {"const": 2000}]}]}],
        },
    }

    form = decompose(CandidateValue.from_document(document))

    assert len(form.boundaries) == 2
    assert len(form.pieces) == 2


def test_classify_should_separate_smooth_and_nonsmooth_points(phi1_form):
    smooth = phi1_form.classify(Position.of(0.5, 0.5, -0.5))
    edge = phi1_form.classify(Position.of(0.5, 0.0, 0.5))
    origin = phi1_form.classify(Position.of(0.5, 0.0, 0.0))

    assert isinstance(smooth, SmoothPoint)
    assert smooth.time_derivative == pytest.approx(1.0)
    assert smooth.gradient == pytest.approx((1.0, 1.0))
    assert isinstance(edge, NonsmoothPoint)
    assert len(edge.pieces) == 2
    assert isinstance(origin, NonsmoothPoint)
    assert len(origin.pieces) == 4
    assert len(origin.boundaries) == 2


def test_active_pieces_should_reject_times_outside_the_interval(phi1_form):
    with pytest.raises(OutsideTimeInterval):
        phi1_form.active_pieces(Position.of(1.5, 0.0, 0.0))


def test_check_terminal_growth_should_flag_quadratic_candidates(caplog):
    x = {"var": "x", "i": 1}
    candidate = CandidateValue.from_document({"n": 1, "expr": {"op": "mul", "args": [x, x]}})

    growth = decompose(candidate).check_terminal_growth()

    assert growth.degree == 2
    assert growth.growing is True
    assert "may grow superlinearly" in caplog.text


def test_check_terminal_growth_should_accept_linear_payoffs(phi1_form):
    growth = phi1_form.check_terminal_growth()

    assert growth.degree == 1
    assert growth.growing is False
    assert growth.estimate <= 1.0 + 1e-12


def test_active_pieces_should_reject_positions_of_another_dimension(phi1_form):
    with pytest.raises(DimensionMismatch):
        phi1_form.active_pieces(Position.of(0.5, 0.0))


def test_decomposition_box_should_cover_the_run_box():
    x = {"var": "x", "i": 1}
    far = {"op": "abs", "args": [{"op": "sub", "args": [x, {"const": 2000}]}]}
    candidate = CandidateValue.from_document({"n": 1, "expr": {"op": "add", "args": [{"op": "abs", "args": [x]}, far]}})
    p = Position.of(0.5, 2500.0)

    narrow = decompose(candidate)
    wide = decompose(candidate, box=decomposition_box((-3000.0, 3000.0)))

    assert decomposition_box((-1.0, 1.0)) == (-1e3, 1e3)
    with pytest.raises(UncoveredPosition):
        narrow.evaluate(p)
    assert len(wide.pieces) == 3
    assert wide.evaluate(p) == pytest.approx(3000.0)
