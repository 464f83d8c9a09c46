from enum import Enum
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional

import orjson
from pydantic import BaseModel
from pydantic import model_validator

from gamevalue.candidates import Position

__all__ = [
    "ConditionId",
    "ConditionStatus",
    "Witness",
    "Estimates",
    "ConditionReport",
    "Overall",
    "SamplingDescription",
    "VerdictReport",
    "aggregate",
]


class ConditionId(str, Enum):
    E1 = "E1"
    E2 = "E2"
    E3 = "E3"
    E4 = "E4"


class ConditionStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


class Overall(str, Enum):
    IN_VALF = "IN_VALF"
    NOT_IN_VALF = "NOT_IN_VALF"
    INCONCLUSIVE = "INCONCLUSIVE"


class Witness(BaseModel):
    position: Optional[Position] = None
    data: Dict[str, Any] = {}
    message: str
    extension_dependent: bool = False


class Estimates(BaseModel):
    """
    Growth and continuity constants of the scaled partial Hamiltonian: gamma bounds the growth,
    lipschitz the x-variation and modulus the slope of the linear time modulus.
    """

    gamma: float
    lipschitz: float
    modulus: float


class ConditionReport(BaseModel):
    """
    The outcome of one condition check.

    ``extension_dependent`` marks a failure that only involves the canonical extension.
    """

    condition: ConditionId
    status: ConditionStatus
    witnesses: List[Witness] = []
    estimates: Optional[Estimates] = None
    extension_dependent: bool = False
    details: Dict[str, Any] = {}

    @model_validator(mode="after")
    def check_consistency(self) -> "ConditionReport":
        if self.status == ConditionStatus.FAIL and not self.witnesses:
            raise ValueError(f"A failed {self.condition.value} report needs a witness.")
        if self.estimates is not None and (
            self.condition != ConditionId.E4 or self.status == ConditionStatus.FAIL
        ):
            raise ValueError("Estimates belong to a non-failed E4 report.")
        return self


class SamplingDescription(BaseModel):
    lattice_points: int
    interior_times: int
    max_stratum_order: int
    e2_interior_samples: int
    combination_samples: int
    positions: int
    stratum_positions: int
    refinement: List[Dict[str, Any]]
    seed: int


def aggregate(conditions: List[ConditionReport]) -> Overall:
    """
    The overall verdict: a failure that does not depend on the canonical extension rejects the candidate,
    four passes accept it, anything else is inconclusive.
    """
    if any(c.status == ConditionStatus.FAIL and not c.extension_dependent for c in conditions):
        return Overall.NOT_IN_VALF
    if len(conditions) == 4 and all(c.status == ConditionStatus.PASS for c in conditions):
        return Overall.IN_VALF
    return Overall.INCONCLUSIVE


class VerdictReport(BaseModel):
    """
    The verdict on a candidate with the reports of every condition.
    """

    candidate: str
    conditions: List[ConditionReport]
    overall: Overall
    sampling: SamplingDescription
    sufficiency_path: str = "canonical-extension"
    metadata: Dict[str, Any] = {}

    def condition(self, condition: ConditionId) -> ConditionReport:
        return next(report for report in self.conditions if report.condition == condition)

    def witness_positions(self) -> List[Position]:
        """
        Positions of every failure witness, used to re-check them on a later run.
        """
        return [
            witness.position
            for report in self.conditions
            if report.status == ConditionStatus.FAIL
            for witness in report.witnesses
            if witness.position is not None
        ]

    def to_document(self, with_metadata: bool = True) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude=None if with_metadata else {"metadata"})

    def to_json(self, with_metadata: bool = True) -> bytes:
        return orjson.dumps(
            self.to_document(with_metadata), option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS
        )

    @classmethod
    def from_json(cls, content: bytes | str) -> "VerdictReport":
        return cls.model_validate(orjson.loads(content))

    @classmethod
    def from_file(cls, path: str | Path) -> "VerdictReport":
        return cls.from_json(Path(path).read_bytes())
