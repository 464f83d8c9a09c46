import pytest

from gamevalue.candidates import CandidateValue
from gamevalue.candidates import Position
from gamevalue.conditions import ConditionId
from gamevalue.conditions import ConditionReport
from gamevalue.conditions import ConditionStatus
from gamevalue.conditions import Overall
from gamevalue.conditions import VerdictReport
from gamevalue.conditions import Witness
from gamevalue.conditions import aggregate
from gamevalue.conditions import full_check
from gamevalue.conditions import run_checks
from gamevalue.conf import RunConfig


def report(condition: ConditionId, status: ConditionStatus, dependent: bool = False) -> ConditionReport:
    witnesses = [Witness(message="witness", extension_dependent=dependent)] if status == ConditionStatus.FAIL else []
    return ConditionReport(condition=condition, status=status, witnesses=witnesses, extension_dependent=dependent)


def test_aggregate_should_follow_the_condition_statuses():
    passed = [report(c, ConditionStatus.PASS) for c in ConditionId]
    failed = passed[:3] + [report(ConditionId.E4, ConditionStatus.FAIL)]
    dependent = [report(ConditionId.E1, ConditionStatus.PASS), report(ConditionId.E2, ConditionStatus.FAIL, True)]
    dependent += passed[2:]
    inconclusive = passed[:3] + [report(ConditionId.E4, ConditionStatus.INCONCLUSIVE)]

    assert aggregate(passed) == Overall.IN_VALF
    assert aggregate(failed) == Overall.NOT_IN_VALF
    assert aggregate(dependent) == Overall.INCONCLUSIVE
    assert aggregate(inconclusive) == Overall.INCONCLUSIVE


def test_condition_report_should_require_a_witness_on_failure():
    with pytest.raises(ValueError):
        ConditionReport(condition=ConditionId.E1, status=ConditionStatus.FAIL)


def test_constant_candidate_should_be_a_value_function(constant_document, small_config):
    verdict = full_check(CandidateValue.from_document(constant_document, name="constant"), small_config)

    assert verdict.overall == Overall.IN_VALF
    assert all(c.status == ConditionStatus.PASS for c in verdict.conditions)
    estimates = verdict.condition(ConditionId.E4).estimates
    assert estimates.gamma == 0.0
    assert estimates.lipschitz == 0.0


def test_phi1_should_be_accepted_on_a_coarse_lattice(phi1, small_config):
    result = run_checks(phi1, small_config)

    assert result.verdict.overall == Overall.IN_VALF
    assert result.verdict.condition(ConditionId.E4).estimates.gamma == pytest.approx(2**-0.5, rel=1e-9)
    h = [sample.h for sample in result.partial.samples if sample.position.key() == Position.of(0.5, 0.0, 0.5).key()]
    assert h and all(value == pytest.approx(-1.0) for value in h)


def test_phi2_should_be_rejected_by_the_growth_condition(phi2, small_config):
    verdict = full_check(phi2, small_config)

    assert verdict.overall == Overall.NOT_IN_VALF
    e4 = verdict.condition(ConditionId.E4)
    assert e4.status == ConditionStatus.FAIL
    gamma = next(w for w in e4.witnesses if w.data["graph"] == "limiting" and w.data["estimate"] == "gamma")
    assert gamma.data["sequence"][1] >= 10.0 * (1.0 - 1e-9) * gamma.data["sequence"][0]


def test_verdict_should_round_trip_through_json(phi2, small_config):
    verdict = full_check(phi2, small_config)

    loaded = VerdictReport.from_json(verdict.to_json())

    assert loaded.overall == verdict.overall
    assert loaded.to_document(with_metadata=False) == verdict.to_document(with_metadata=False)


def test_verdicts_should_not_depend_on_the_run(phi2, small_config):
    first = full_check(phi2, small_config)
    second = full_check(phi2, small_config)

    assert first.to_json(with_metadata=False) == second.to_json(with_metadata=False)


def test_extra_positions_should_be_sampled(phi1, small_config):
    extra = [Position.of(0.37, 0.0, 0.41)]

    result = run_checks(phi1, small_config, extra_positions=extra)

    assert any(ld.position.key() == extra[0].key() for ld in result.analyses)


@pytest.mark.slow
def test_phi1_should_be_accepted_with_the_default_sampling(phi1):
    verdict = full_check(phi1, RunConfig())

    assert verdict.overall == Overall.IN_VALF


@pytest.mark.slow
def test_phi2_should_be_rejected_with_the_default_sampling(phi2):
    verdict = full_check(phi2, RunConfig())

    assert verdict.overall == Overall.NOT_IN_VALF
    assert verdict.condition(ConditionId.E4).status == ConditionStatus.FAIL
