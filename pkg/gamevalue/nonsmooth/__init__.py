from gamevalue.nonsmooth.dini import clarke
from gamevalue.nonsmooth.dini import classify_cj
from gamevalue.nonsmooth.dini import dini_polytope
from gamevalue.nonsmooth.dini import directional_derivative
from gamevalue.nonsmooth.dini import directional_derivatives
from gamevalue.nonsmooth.dini import limiting_data
from gamevalue.nonsmooth.dini import tangent_cones
from gamevalue.nonsmooth.limiting import CJClass
from gamevalue.nonsmooth.limiting import E1Entry
from gamevalue.nonsmooth.limiting import LimitingData
from gamevalue.nonsmooth.limiting import limiting_gradients
from gamevalue.nonsmooth.polytope import ClarkePolytope
from gamevalue.nonsmooth.polytope import DiniKind
from gamevalue.nonsmooth.polytope import DiniPolytope
from gamevalue.nonsmooth.polytope import enumerate_vertices
from gamevalue.nonsmooth.polytope import hull_vertices
from gamevalue.nonsmooth.polytope import simplex_weights
from gamevalue.nonsmooth.polytope import unit_directions

__all__ = [
    "CJClass",
    "ClarkePolytope",
    "DiniKind",
    "DiniPolytope",
    "E1Entry",
    "LimitingData",
    "clarke",
    "classify_cj",
    "dini_polytope",
    "directional_derivative",
    "directional_derivatives",
    "enumerate_vertices",
    "hull_vertices",
    "limiting_data",
    "limiting_gradients",
    "simplex_weights",
    "tangent_cones",
    "unit_directions",
]
