import pytest

from gamevalue.candidates import Position
from gamevalue.candidates import decompose
from gamevalue.hamiltonians import ClosedFormHamiltonian
from gamevalue.solvers import minimax_spot_check
from gamevalue.solvers import residual_target

POSITIONS = [
    Position.of(0.5, 0.3, 0.4),
    Position.of(0.25, -0.7, 0.2),
    Position.of(0.5, 0.0, 0.5),
    Position.of(0.5, -0.5, 0.0),
    Position.of(0.5, 0.0, 0.0),
]


def test_minimax_spot_check_should_accept_phi1(phi1_form, max_hamiltonian):
    report = minimax_spot_check(phi1_form, max_hamiltonian, POSITIONS)

    assert report.passed
    assert report.smooth_samples == 2
    assert report.max_residual == 0.0
    assert report.upper_slack <= 1e-12
    assert report.lower_slack >= -1e-12
    assert report.target == residual_target(max_hamiltonian) == 1e-9


def test_minimax_spot_check_should_flag_the_wrong_hamiltonian(tent):
    steep = {"op": "add", "args": [{"op": "abs", "args": [{"var": "s", "i": 1}]}] * 2}
    document = {"n": 1, "expr": {"op": "neg", "args": [steep]}, "gamma": 2.0, "upsilon": 2.0}
    hamiltonian = ClosedFormHamiltonian.from_document(document)

    report = minimax_spot_check(decompose(tent), hamiltonian, [Position.of(0.5, 0.4), Position.of(0.5, 0.0)])

    assert not report.passed
    assert report.max_residual == pytest.approx(1.0)
    assert report.lower_slack == pytest.approx(-1.0)
    assert {violation.inequality for violation in report.violations} == {"equation", "lower"}
