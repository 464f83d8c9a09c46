from gamevalue.candidates.expression import CandidateValue
from gamevalue.candidates.expression import ExprNode
from gamevalue.candidates.expression import NodeKind
from gamevalue.candidates.expression import game_symbols
from gamevalue.candidates.expression import parse_candidate
from gamevalue.candidates.expression import parse_node
from gamevalue.candidates.frame import GameFrame
from gamevalue.candidates.frame import Position
from gamevalue.candidates.piecewise import DEFAULT_DECOMPOSITION_BOX
from gamevalue.candidates.piecewise import Hyperplane
from gamevalue.candidates.piecewise import NonsmoothPoint
from gamevalue.candidates.piecewise import Piece
from gamevalue.candidates.piecewise import PiecewiseForm
from gamevalue.candidates.piecewise import PointClass
from gamevalue.candidates.piecewise import SmoothPoint
from gamevalue.candidates.piecewise import TerminalGrowth
from gamevalue.candidates.piecewise import decompose
from gamevalue.candidates.piecewise import decomposition_box

__all__ = [
    "CandidateValue",
    "DEFAULT_DECOMPOSITION_BOX",
    "ExprNode",
    "GameFrame",
    "Hyperplane",
    "NodeKind",
    "NonsmoothPoint",
    "Piece",
    "PiecewiseForm",
    "PointClass",
    "Position",
    "SmoothPoint",
    "TerminalGrowth",
    "decompose",
    "decomposition_box",
    "game_symbols",
    "parse_candidate",
    "parse_node",
]
