from gamevalue.hamiltonians.closed_form import ClosedFormHamiltonian
from gamevalue.hamiltonians.closed_form import estimate_constants
from gamevalue.hamiltonians.dump import hamiltonian_header
from gamevalue.hamiltonians.dump import hamiltonian_table
from gamevalue.hamiltonians.dump import load_hamiltonian
from gamevalue.hamiltonians.mcshane import ENatSamples
from gamevalue.hamiltonians.mcshane import McShaneExtension
from gamevalue.hamiltonians.mcshane import McShaneHamiltonian
from gamevalue.hamiltonians.mcshane import build_sample_set
from gamevalue.hamiltonians.mcshane import calibrate_moduli
from gamevalue.hamiltonians.mcshane import homogenize
from gamevalue.hamiltonians.mcshane import mcshane_extend
from gamevalue.hamiltonians.model import HamiltonianMetadata
from gamevalue.hamiltonians.model import HamiltonianModel
from gamevalue.hamiltonians.model import Provenance
from gamevalue.hamiltonians.regularity import RegularityReport
from gamevalue.hamiltonians.regularity import verify_h123

__all__ = [
    "ClosedFormHamiltonian",
    "ENatSamples",
    "HamiltonianMetadata",
    "HamiltonianModel",
    "McShaneExtension",
    "McShaneHamiltonian",
    "Provenance",
    "RegularityReport",
    "build_sample_set",
    "calibrate_moduli",
    "estimate_constants",
    "hamiltonian_header",
    "hamiltonian_table",
    "homogenize",
    "load_hamiltonian",
    "mcshane_extend",
    "verify_h123",
]
