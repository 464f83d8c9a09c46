import numpy as np
import pytest

from gamevalue.candidates import Position
from gamevalue.conditions import ConditionStatus
from gamevalue.conditions import ExtensionStatus
from gamevalue.conditions import HOrigin
from gamevalue.conditions import HSample
from gamevalue.conditions import PartialHamiltonian
from gamevalue.conditions import check_e3
from gamevalue.conditions import extend_h_e2
from gamevalue.exceptions import MissingHamiltonianValue
from gamevalue.exceptions import NotInHullError
from gamevalue.nonsmooth import E1Entry
from gamevalue.nonsmooth import LimitingData

POSITION = Position.of(0.5, 0.0, 0.0)


def limiting(*entries) -> LimitingData:
    return LimitingData(
        position=POSITION,
        e1=[E1Entry(s=s, h=h, pieces=(k,)) for k, (s, h) in enumerate(entries)],
    )


def test_extend_h_e2_should_use_the_unique_representation():
    ld = limiting(((1.0, 0.0), 1.0), ((-1.0, 0.0), 0.0))

    result = extend_h_e2(ld, np.array([0.0, 0.0]))

    assert result.status == ExtensionStatus.VALUE
    assert result.value == pytest.approx(0.5)
    np.testing.assert_allclose(result.representations[0], [0.5, 0.5], atol=1e-9)


def test_extend_h_e2_should_flag_ill_defined_values():
    ld = limiting(((1.0, 0.0), 1.0), ((-1.0, 0.0), 0.0), ((0.0, 1.0), 0.0), ((0.0, -1.0), 0.0))

    result = extend_h_e2(ld, np.array([0.0, 0.0]))

    assert result.status == ExtensionStatus.ILL_DEFINED
    assert result.value is None
    assert result.low == pytest.approx(0.0)
    assert result.high == pytest.approx(0.5)
    assert len(result.representations) == 2


def test_extend_h_e2_should_raise_outside_the_hull():
    ld = limiting(((1.0, 0.0), 1.0), ((-1.0, 0.0), 0.0))

    with pytest.raises(NotInHullError):
        extend_h_e2(ld, np.array([2.0, 0.0]))


def sample(s, h, origin=HOrigin.E1) -> HSample:
    return HSample(position=POSITION, s=s, h=h, origin=origin)


def test_check_e3_should_pass_on_homogeneous_values():
    partial = PartialHamiltonian(samples=[sample((1.0, 0.0), 1.0), sample((2.0, 0.0), 2.0), sample((0.0, 0.0), 0.0)])

    report = check_e3(partial)

    assert report.status == ConditionStatus.PASS
    assert report.details["codirectional_pairs"] == 1


def test_check_e3_should_fail_on_codirectional_mismatch():
    partial = PartialHamiltonian(samples=[sample((1.0, 0.0), 1.0), sample((2.0, 0.0), 3.0, HOrigin.E2)])

    report = check_e3(partial)

    assert report.status == ConditionStatus.FAIL
    assert report.extension_dependent is True
    assert "scale h inconsistently" in report.witnesses[0].message


def test_check_e3_should_fail_on_a_nonzero_value_at_a_vanishing_gradient():
    report = check_e3(PartialHamiltonian(samples=[sample((0.0, 0.0), -1.0)]))

    assert report.status == ConditionStatus.FAIL
    assert report.extension_dependent is False


def test_partial_hamiltonian_value_at_should_match_samples():
    partial = PartialHamiltonian(samples=[sample((1.0, 0.0), 1.0)])

    assert partial.value_at(POSITION, np.array([1.0, 0.0])) == 1.0
    with pytest.raises(MissingHamiltonianValue):
        partial.value_at(POSITION, np.array([0.0, 1.0]))


def test_normalized_arrays_should_skip_vanishing_gradients():
    partial = PartialHamiltonian(samples=[sample((0.0, 0.0), 0.0), sample((0.0, 2.0), -1.0)])

    rows, units, values, indices = partial.normalized_arrays()

    np.testing.assert_allclose(units, [[0.0, 1.0]])
    np.testing.assert_allclose(values, [-0.5])
    assert indices == [1]
    np.testing.assert_allclose(rows, [[0.5, 0.0, 0.0]])
