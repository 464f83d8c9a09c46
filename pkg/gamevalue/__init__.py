from gamevalue.builder import GameValue
from gamevalue.builder import GameValueBuilder
from gamevalue.builder import GameValueReport
from gamevalue.candidates import CandidateValue
from gamevalue.candidates import GameFrame
from gamevalue.candidates import PiecewiseForm
from gamevalue.candidates import Position
from gamevalue.candidates import decompose
from gamevalue.conditions import ConditionId
from gamevalue.conditions import ConditionStatus
from gamevalue.conditions import Overall
from gamevalue.conditions import VerdictReport
from gamevalue.conditions import full_check
from gamevalue.conditions import run_checks
from gamevalue.conf import GameValueConfiguration
from gamevalue.conf import RunConfig
from gamevalue.conf import logger_configuration
from gamevalue.exceptions import GameValueException
from gamevalue.exporters import CSVExporter
from gamevalue.exporters import Exporter
from gamevalue.exporters import JSONExporter
from gamevalue.exporters import MsgpackExporter
from gamevalue.exporters import StdoutExporter
from gamevalue.games import GameDynamics
from gamevalue.games import GameKind
from gamevalue.games import synth_isaacs_1d
from gamevalue.games import synth_maxmin
from gamevalue.games import synth_minmax
from gamevalue.games import verify_hamiltonian_identity
from gamevalue.hamiltonians import ClosedFormHamiltonian
from gamevalue.hamiltonians import HamiltonianModel
from gamevalue.hamiltonians import McShaneHamiltonian
from gamevalue.hamiltonians import homogenize
from gamevalue.hamiltonians import mcshane_extend
from gamevalue.hamiltonians import verify_h123
from gamevalue.nonsmooth import limiting_data
from gamevalue.solvers import TerminalPayoff
from gamevalue.solvers import minimax_spot_check
from gamevalue.solvers import solve_dp
from gamevalue.solvers import solve_lf

__version__ = "0.1.0"

__all__ = [
    "CSVExporter",
    "CandidateValue",
    "ClosedFormHamiltonian",
    "ConditionId",
    "ConditionStatus",
    "Exporter",
    "GameDynamics",
    "GameFrame",
    "GameKind",
    "GameValue",
    "GameValueBuilder",
    "GameValueConfiguration",
    "GameValueException",
    "GameValueReport",
    "HamiltonianModel",
    "JSONExporter",
    "McShaneHamiltonian",
    "MsgpackExporter",
    "Overall",
    "PiecewiseForm",
    "Position",
    "RunConfig",
    "StdoutExporter",
    "TerminalPayoff",
    "VerdictReport",
    "decompose",
    "full_check",
    "homogenize",
    "limiting_data",
    "logger_configuration",
    "mcshane_extend",
    "minimax_spot_check",
    "run_checks",
    "solve_dp",
    "solve_lf",
    "synth_isaacs_1d",
    "synth_maxmin",
    "synth_minmax",
    "verify_h123",
    "verify_hamiltonian_identity",
]
