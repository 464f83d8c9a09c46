from gamevalue.solvers.dynamic_programming import solve_dp
from gamevalue.solvers.dynamic_programming import velocity_bound
from gamevalue.solvers.field import ErrorStats
from gamevalue.solvers.field import LevelError
from gamevalue.solvers.field import Scheme
from gamevalue.solvers.field import ValueField
from gamevalue.solvers.grid import Grid
from gamevalue.solvers.grid import build_grid
from gamevalue.solvers.lax_friedrichs import RefinementRow
from gamevalue.solvers.lax_friedrichs import RefinementTable
from gamevalue.solvers.lax_friedrichs import refinement_table
from gamevalue.solvers.lax_friedrichs import snapshot_levels
from gamevalue.solvers.lax_friedrichs import solve_lf
from gamevalue.solvers.lax_friedrichs import time_step
from gamevalue.solvers.minimax import MinimaxReport
from gamevalue.solvers.minimax import MinimaxViolation
from gamevalue.solvers.minimax import minimax_spot_check
from gamevalue.solvers.minimax import residual_target
from gamevalue.solvers.terminal import TerminalPayoff

__all__ = [
    "ErrorStats",
    "Grid",
    "LevelError",
    "MinimaxReport",
    "MinimaxViolation",
    "RefinementRow",
    "RefinementTable",
    "Scheme",
    "TerminalPayoff",
    "ValueField",
    "build_grid",
    "minimax_spot_check",
    "refinement_table",
    "residual_target",
    "snapshot_levels",
    "solve_dp",
    "solve_lf",
    "time_step",
    "velocity_bound",
]
