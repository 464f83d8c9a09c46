import numpy as np
import pytest

from gamevalue.exceptions import CandidateFormatError
from gamevalue.hamiltonians import ClosedFormHamiltonian
from gamevalue.hamiltonians import Provenance
from gamevalue.hamiltonians import verify_h123


def test_closed_form_should_evaluate_on_broadcast_arrays(max_hamiltonian):
    s = np.array([[1.0, 0.0], [0.5, -2.0], [0.0, 0.0]])

    values = max_hamiltonian.evaluate(0.5, np.zeros(2), s)

    np.testing.assert_allclose(values, [-1.0, -2.0, 0.0])
    assert max_hamiltonian(0.5, [0.3, 0.3], [0.0, -1.0]) == -1.0


def test_closed_form_should_keep_declared_constants(max_hamiltonian):
    metadata = max_hamiltonian.metadata

    assert metadata.gamma == 1.0
    assert metadata.upsilon == 1.0
    assert metadata.provenance == Provenance.CLOSED_FORM
    assert metadata.x_independent is True
    assert max_hamiltonian.axis_speed(10.0) == 1.0


def test_closed_form_should_estimate_missing_constants(max_hamiltonian_document, caplog):
    document = {key: value for key, value in max_hamiltonian_document.items() if key not in ("gamma", "upsilon")}

    hamiltonian = ClosedFormHamiltonian.from_document(document)

    assert "declares no gamma" in caplog.text
    assert 0.5 <= hamiltonian.metadata.upsilon <= 1.06
    assert hamiltonian.metadata.gamma <= 1.06


def test_closed_form_should_reject_documents_without_an_expression():
    with pytest.raises(CandidateFormatError):
        ClosedFormHamiltonian.from_document({"n": 2})


def test_verify_h123_should_pass_on_a_regular_hamiltonian(max_hamiltonian):
    report = verify_h123(max_hamiltonian, draws=500)

    assert report.passed
    assert report.growth_ratio <= 1.0
    assert report.homogeneity_violations == 0


def test_verify_h123_should_flag_an_understated_growth_constant(max_hamiltonian, caplog):
    understated = max_hamiltonian.model_copy(
        update={"metadata": max_hamiltonian.metadata.model_copy(update={"upsilon": 0.5})}
    )

    report = verify_h123(understated, draws=500)

    assert not report.passed
    assert report.growth_violations > 0
    assert report.growth_ratio > 1.0
    assert "H1-H3 violations" in caplog.text


def test_verify_h123_should_flag_non_homogeneous_hamiltonians():
    document = {
        "n": 1,
        "expr": {"op": "add", "args": [{"var": "s", "i": 1}, {"const": 0.1}]},
        "gamma": 5.0,
        "upsilon": 5.0,
    }

    report = verify_h123(ClosedFormHamiltonian.from_document(document), draws=200)

    assert report.homogeneity_violations > 0
