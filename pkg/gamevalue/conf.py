import os
import sys
from pathlib import Path
from typing import Any
from typing import List
from typing import Literal
from typing import Tuple

import orjson
from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

from gamevalue.exceptions import ConfigurationError


def logger_configuration(level: str) -> None:
    """
    Configure the logger format.
    """
    log_format = (
        "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | "
        "<cyan><level>{level: <8}</level></cyan> <level>{message}</level>"
    )
    logger_config = {
        "handlers": [
            {"sink": sys.stderr, "format": log_format, "level": level},
        ],
    }
    logger.configure(**logger_config)  # type: ignore


def _from_environment(name: str, value: Any) -> Any:
    """
    The value of an environment variable when it is set, the given value otherwise.
    """
    override = os.environ.get(name)
    if override is None:
        return value
    if override.strip() != str(value):
        logger.warning(f"{name}={override} overrides the configured value {value}; reports record {override}.")
    return override


class GameValueConfiguration(BaseModel):
    """
    The process-level configuration of GameValue.
    """

    log_level: str
    seed: int
    max_dimension: int
    workers: int

    def __init__(
        self,
        log_level: str = "INFO",
        seed: int = 0,
        max_dimension: int = 3,
        workers: int = 8,
        env_file_path: str | None = None,
        **data: Any,
    ) -> None:
        load_dotenv(env_file_path)
        log_level = os.environ.get("GAMEVALUE_LOG_LEVEL", log_level)
        logger_configuration(level=log_level)
        super().__init__(
            log_level=log_level,
            seed=_from_environment("GAMEVALUE_SEED", seed),
            max_dimension=_from_environment("GAMEVALUE_MAX_DIMENSION", max_dimension),
            workers=_from_environment("GAMEVALUE_WORKERS", workers),
            **data,
        )


class Tolerances(BaseModel):
    """
    Numerical tolerances shared by every stage.
    """

    snap: float = Field(default=1e-9, gt=0)
    merge: float = Field(default=1e-9, gt=0)
    feasibility: float = Field(default=1e-9, gt=0)
    condition: float = Field(default=1e-9, gt=0)
    extension: float = Field(default=1e-12, gt=0)
    growth_threshold: float = Field(default=10.0, gt=1)
    stability: float = Field(default=0.1, gt=0)


class RefinementStep(BaseModel):
    """
    One box of the growth-estimate schedule.

    ``time_floor`` is the distance kept from both ends of the time interval, as a fraction of its length.
    """

    time_floor: float = Field(gt=0, lt=0.5)
    lattice_points: int = Field(default=9, ge=2)


def default_refinement() -> List[RefinementStep]:
    return [
        RefinementStep(time_floor=0.1, lattice_points=9),
        RefinementStep(time_floor=0.01, lattice_points=13),
        RefinementStep(time_floor=0.001, lattice_points=17),
    ]


class SamplingSettings(BaseModel):
    """
    Sampling densities of the condition checks.
    """

    lattice_points: int = Field(default=9, ge=2)
    interior_times: int = Field(default=7, ge=1)
    e2_interior_samples: int = Field(default=50, ge=0)
    combination_samples: int = Field(default=50, ge=0)
    max_stratum_order: int = Field(default=3, ge=1)
    directions: int = Field(default=4000, ge=8)
    probe_points: int = Field(default=2000, ge=1)


class GridSettings(BaseModel):
    """
    Grid of the Hamilton-Jacobi solvers.
    """

    points: int = Field(default=161, ge=3)
    padding: float | None = Field(default=None, ge=0)
    cfl: float = Field(default=0.9, gt=0, le=1)
    dt: float | None = Field(default=None, gt=0)
    snapshots: int = Field(default=11, ge=2)
    tolerance: float = Field(default=0.15, gt=0)
    refine: bool = True


class GameMeshSettings(BaseModel):
    """
    Control-set discretization of the identity checks.
    """

    delta: float = Field(default=0.05, gt=0)
    samples: int = Field(default=500, ge=1)
    gate_samples: int = Field(default=20, ge=1)
    gate_delta: float = Field(default=0.1, gt=0)
    dp_delta: float = Field(default=0.5, gt=0)
    s_radius: float = Field(default=2.0, gt=0)


class RunConfig(BaseModel):
    """
    The configuration of one pipeline run.
    """

    candidate: str | None = None
    box: Tuple[float, float] = (-1.0, 1.0)
    seed: int = 0
    kind: Literal["maxmin", "minmax", "isaacs1d"] = "maxmin"
    scheme: Literal["lf", "dp"] = "lf"
    output: str = "gamevalue_output"
    force: bool = False
    max_dimension: int = Field(default=3, ge=1)
    workers: int = Field(default=8, ge=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    refinement: List[RefinementStep] = Field(default_factory=default_refinement)
    grid: GridSettings = Field(default_factory=GridSettings)
    game: GameMeshSettings = Field(default_factory=GameMeshSettings)

    @model_validator(mode="after")
    def check_box(self) -> "RunConfig":
        if not self.box[0] < self.box[1]:
            raise ValueError(f"The box bounds must be increasing, got {self.box}.")
        if not self.refinement:
            raise ValueError("The refinement schedule is empty.")
        return self

    @classmethod
    def from_file(cls, path: str | Path | None, **overrides: Any) -> "RunConfig":
        """
        Load a run configuration from a JSON file.

        Overrides set to None are ignored, a dotted key such as ``grid.points`` replaces a nested field.

        :param path: the JSON file, or None for the defaults
        :param overrides: fields replacing the file values
        :return: the validated configuration
        """
        document: dict = {}
        if path is not None:
            try:
                document = orjson.loads(Path(path).read_bytes())
            except (OSError, orjson.JSONDecodeError) as exception:
                raise ConfigurationError(f"Cannot read the configuration {path}: {exception}") from exception
            if not isinstance(document, dict):
                raise ConfigurationError(f"The configuration {path} must be a JSON object.")
        for key, value in overrides.items():
            if value is None:
                continue
            section, _, field = key.partition(".")
            if field:
                document.setdefault(section, {})[field] = value
            else:
                document[key] = value
        return cls.build(**document)

    @classmethod
    def build(cls, **fields: Any) -> "RunConfig":
        """
        Validate the fields into a configuration, raising ConfigurationError on failure.
        """
        try:
            return cls.model_validate(fields)
        except ValidationError as exception:
            raise ConfigurationError(str(exception)) from exception
