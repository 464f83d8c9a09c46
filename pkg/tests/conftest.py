from pathlib import Path
from typing import Any
from typing import Dict

import orjson
import pytest
from _pytest.logging import LogCaptureFixture
from loguru import logger

from gamevalue import CandidateValue
from gamevalue import ClosedFormHamiltonian
from gamevalue import RunConfig
from gamevalue import decompose


def node_abs(arg: Dict[str, Any]) -> Dict[str, Any]:
    return {"op": "abs", "args": [arg]}


def node_x(i: int) -> Dict[str, Any]:
    return {"var": "x", "i": i}


def node_s(i: int) -> Dict[str, Any]:
    return {"var": "s", "i": i}


T = {"var": "t"}


@pytest.fixture
def caplog(caplog: LogCaptureFixture):
    handler_id = logger.add(caplog.handler, format="{message}")
    yield caplog
    logger.remove(handler_id)


@pytest.fixture
def phi1_document() -> Dict[str, Any]:
    return {
        "n": 2,
        "t0": 0.0,
        "theta0": 1.0,
        "expr": {"op": "add", "args": [T, node_abs(node_x(1)), {"op": "neg", "args": [node_abs(node_x(2))]}]},
    }


@pytest.fixture
def phi2_document() -> Dict[str, Any]:
    return {
        "n": 2,
        "t0": 0.0,
        "theta0": 1.0,
        "expr": {"op": "mul", "args": [T, {"op": "sub", "args": [node_abs(node_x(1)), node_abs(node_x(2))]}]},
    }


@pytest.fixture
def constant_document() -> Dict[str, Any]:
    return {"n": 2, "t0": 0.0, "theta0": 1.0, "expr": {"const": 2.0}}


@pytest.fixture
def tent_document() -> Dict[str, Any]:
    return {"n": 1, "t0": 0.0, "theta0": 1.0, "expr": {"op": "sub", "args": [T, node_abs(node_x(1))]}}


@pytest.fixture
def phi1(phi1_document) -> CandidateValue:
    return CandidateValue.from_document(phi1_document, name="phi1")


@pytest.fixture
def phi2(phi2_document) -> CandidateValue:
    return CandidateValue.from_document(phi2_document, name="phi2")


@pytest.fixture
def tent(tent_document) -> CandidateValue:
    return CandidateValue.from_document(tent_document, name="tent")


@pytest.fixture
def phi1_form(phi1):
    return decompose(phi1)


@pytest.fixture
def max_hamiltonian_document() -> Dict[str, Any]:
    return {
        "n": 2,
        "expr": {"op": "neg", "args": [{"op": "max", "args": [node_abs(node_s(1)), node_abs(node_s(2))]}]},
        "gamma": 1.0,
        "upsilon": 1.0,
    }


@pytest.fixture
def max_hamiltonian(max_hamiltonian_document) -> ClosedFormHamiltonian:
    return ClosedFormHamiltonian.from_document(max_hamiltonian_document, name="max")


@pytest.fixture
def abs_hamiltonian() -> ClosedFormHamiltonian:
    document = {"n": 1, "expr": {"op": "neg", "args": [node_abs(node_s(1))]}, "gamma": 1.0, "upsilon": 1.0}
    return ClosedFormHamiltonian.from_document(document, name="abs")


@pytest.fixture
def small_config() -> RunConfig:
    return RunConfig.build(
        sampling={"lattice_points": 5, "interior_times": 3, "e2_interior_samples": 10, "combination_samples": 10},
        refinement=[{"time_floor": 0.1, "lattice_points": 5}, {"time_floor": 0.01, "lattice_points": 5}],
    )


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, document: Dict[str, Any]) -> Path:
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(orjson.dumps(document))
        return path

    return write


@pytest.fixture
def pipeline_document() -> Dict[str, Any]:
    return {
        "sampling": {"lattice_points": 5, "interior_times": 3, "e2_interior_samples": 10, "combination_samples": 10},
        "refinement": [{"time_floor": 0.1, "lattice_points": 5}, {"time_floor": 0.01, "lattice_points": 5}],
        "game": {"samples": 20, "delta": 0.2, "gate_samples": 5},
        "grid": {"points": 41, "refine": False, "tolerance": 0.5},
    }


@pytest.fixture
def pipeline_config(pipeline_document, tmp_path) -> RunConfig:
    return RunConfig.build(output=str(tmp_path / "run"), **pipeline_document)
