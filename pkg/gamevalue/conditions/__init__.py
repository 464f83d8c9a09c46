from gamevalue.conditions.checker import CheckResult
from gamevalue.conditions.checker import analyze_positions
from gamevalue.conditions.checker import full_check
from gamevalue.conditions.checker import run_checks
from gamevalue.conditions.checker import run_metadata
from gamevalue.conditions.checks import GrowthEstimate
from gamevalue.conditions.checks import check_e1
from gamevalue.conditions.checks import check_e2
from gamevalue.conditions.checks import check_e3
from gamevalue.conditions.checks import check_e4
from gamevalue.conditions.checks import estimate_growth
from gamevalue.conditions.partial import ExtensionResult
from gamevalue.conditions.partial import ExtensionStatus
from gamevalue.conditions.partial import HOrigin
from gamevalue.conditions.partial import HSample
from gamevalue.conditions.partial import PartialHamiltonian
from gamevalue.conditions.partial import build_partial
from gamevalue.conditions.partial import extend_h_e2
from gamevalue.conditions.sampler import StratumSampler
from gamevalue.conditions.verdict import ConditionId
from gamevalue.conditions.verdict import ConditionReport
from gamevalue.conditions.verdict import ConditionStatus
from gamevalue.conditions.verdict import Estimates
from gamevalue.conditions.verdict import Overall
from gamevalue.conditions.verdict import SamplingDescription
from gamevalue.conditions.verdict import VerdictReport
from gamevalue.conditions.verdict import Witness
from gamevalue.conditions.verdict import aggregate

__all__ = [
    "CheckResult",
    "ConditionId",
    "ConditionReport",
    "ConditionStatus",
    "Estimates",
    "ExtensionResult",
    "ExtensionStatus",
    "GrowthEstimate",
    "HOrigin",
    "HSample",
    "Overall",
    "PartialHamiltonian",
    "SamplingDescription",
    "StratumSampler",
    "VerdictReport",
    "Witness",
    "aggregate",
    "analyze_positions",
    "build_partial",
    "check_e1",
    "check_e2",
    "check_e3",
    "check_e4",
    "estimate_growth",
    "extend_h_e2",
    "full_check",
    "run_checks",
    "run_metadata",
]
