from gamevalue.games.controls import SHELLS
from gamevalue.games.controls import ControlPoint
from gamevalue.games.controls import ControlSet
from gamevalue.games.controls import ControlSetKind
from gamevalue.games.controls import ball_points
from gamevalue.games.controls import sphere_points
from gamevalue.games.dynamics import GameDynamics
from gamevalue.games.dynamics import GameKind
from gamevalue.games.identity import IdentityReport
from gamevalue.games.identity import enumerate_optimum
from gamevalue.games.identity import homogeneity_defect
from gamevalue.games.identity import identity_tolerance
from gamevalue.games.identity import iterated_optima
from gamevalue.games.identity import payoff_matrix
from gamevalue.games.identity import verify_hamiltonian_identity
from gamevalue.games.synthesis import synth_isaacs_1d
from gamevalue.games.synthesis import synth_maxmin
from gamevalue.games.synthesis import synth_minmax
from gamevalue.games.synthesis import synthesize

__all__ = [
    "SHELLS",
    "ControlPoint",
    "ControlSet",
    "ControlSetKind",
    "GameDynamics",
    "GameKind",
    "IdentityReport",
    "ball_points",
    "enumerate_optimum",
    "homogeneity_defect",
    "identity_tolerance",
    "iterated_optima",
    "payoff_matrix",
    "sphere_points",
    "synth_isaacs_1d",
    "synth_maxmin",
    "synth_minmax",
    "synthesize",
    "verify_hamiltonian_identity",
]
