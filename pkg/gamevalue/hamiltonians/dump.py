from typing import Any
from typing import Dict
from typing import Tuple

from gamevalue.candidates import GameFrame
from gamevalue.exceptions import CandidateFormatError
from gamevalue.hamiltonians.closed_form import ClosedFormHamiltonian
from gamevalue.hamiltonians.mcshane import ENatSamples
from gamevalue.hamiltonians.mcshane import McShaneExtension
from gamevalue.hamiltonians.mcshane import McShaneHamiltonian
from gamevalue.hamiltonians.model import HamiltonianMetadata
from gamevalue.hamiltonians.model import HamiltonianModel
from gamevalue.hamiltonians.model import Provenance

__all__ = [
    "hamiltonian_header",
    "hamiltonian_table",
    "load_hamiltonian",
]


def hamiltonian_header(
    hamiltonian: HamiltonianModel, table_name: str | None, table_sha256: str | None
) -> Dict[str, Any]:
    """
    The header document of a Hamiltonian dump, the sample table referenced by name and digest.
    """
    header: Dict[str, Any] = {
        "frame": hamiltonian.frame.model_dump(mode="json"),
        "metadata": hamiltonian.metadata.model_dump(mode="json"),
    }
    if isinstance(hamiltonian, ClosedFormHamiltonian):
        header["closed_form"] = hamiltonian.to_document()
    if isinstance(hamiltonian, McShaneHamiltonian):
        samples = hamiltonian.extension.samples
        header["table"] = {"name": table_name, "sha256": table_sha256, "rows": len(samples)}
        header["moduli"] = {"gamma": samples.gamma, "lipschitz": samples.lipschitz, "modulus": samples.modulus}
    return header


def hamiltonian_table(hamiltonian: HamiltonianModel) -> Dict[str, Any] | None:
    if isinstance(hamiltonian, McShaneHamiltonian):
        return hamiltonian.extension.samples.to_table()
    return None


def load_hamiltonian(header: Dict[str, Any], table: Dict[str, Any] | None = None) -> HamiltonianModel:
    """
    Rebuild a Hamiltonian from its header and, for an extension, its sample table.
    """
    try:
        frame = GameFrame.model_validate(header["frame"])
        metadata = HamiltonianMetadata.model_validate(header["metadata"])
    except (KeyError, ValueError) as exception:
        raise CandidateFormatError(f"Invalid Hamiltonian header: {exception}") from exception
    box: Tuple[float, float] = tuple(metadata.box)  # type: ignore[assignment]
    if metadata.provenance == Provenance.CLOSED_FORM:
        closed = ClosedFormHamiltonian.from_document(header["closed_form"], box=box)
        return closed.model_copy(update={"metadata": metadata})
    if table is None:
        raise CandidateFormatError("The Hamiltonian header references a sample table that was not given.")
    samples = ENatSamples.from_table(table, frame, box, calibrated=True, **header["moduli"])
    return McShaneHamiltonian(frame=frame, metadata=metadata, extension=McShaneExtension(samples=samples))
