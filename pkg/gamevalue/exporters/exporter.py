import asyncio
import hashlib
from abc import ABCMeta
from abc import abstractmethod
from enum import Enum
from pathlib import Path
from typing import Any
from typing import AsyncGenerator
from typing import Dict
from typing import List

import aiofiles
import numpy as np
from asyncer import asyncify
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

__all__ = [
    "ArtifactFormat",
    "Artifact",
    "ArtifactRecord",
    "ArtifactGenerator",
    "Exporter",
    "sha256_digest",
]


def sha256_digest(content: bytes) -> str:
    return hashlib.sha256(content).hexdigest()


class ArtifactFormat(str, Enum):
    JSON = "json"
    MSGPACK = "msgpack"
    CSV = "csv"
    SUMMARY = "summary"


class Artifact(BaseModel):
    """
    A named output of the pipeline: a document, a sample table or a grid dump.
    """

    name: str
    format: ArtifactFormat
    document: Dict[str, Any] | None = None
    header: List[str] = Field(default_factory=list)
    rows: np.ndarray | None = None

    model_config = ConfigDict(arbitrary_types_allowed=True)


class ArtifactRecord(BaseModel):
    """
    Where an artifact was written and the digest of its bytes.
    """

    exporter_name: str
    name: str
    path: str | None = None
    sha256: str | None = None
    size: int = 0


class ArtifactGenerator(BaseModel):
    """
    ArtifactGenerator generates artifacts for the Exporter.
    """

    artifacts: List[Artifact]

    async def generate(self) -> AsyncGenerator[Artifact, None]:
        for artifact in self.artifacts:
            yield artifact


class Exporter(BaseModel, metaclass=ABCMeta):
    """The Exporter interface."""

    directory: str = "."
    records: Dict[str, ArtifactRecord] = Field(default_factory=dict)

    @abstractmethod
    async def launch(self, artifact_generator: ArtifactGenerator) -> None:
        """
        Launch the exporter on the artifacts of its format.

        :param artifact_generator: the artifact generator
        """
        pass

    def export(self, artifact_generators: List[ArtifactGenerator]) -> Dict[str, ArtifactRecord]:
        """
        Export every artifact generator and return the records of the written artifacts.
        """
        asyncio.run(self._launch_all(artifact_generators))
        return self.records

    async def _launch_all(self, artifact_generators: List[ArtifactGenerator]) -> None:
        for artifact_generator in artifact_generators:
            logger.debug(f"Running ArtifactGenerator with {len(artifact_generator.artifacts)} artifacts.")
            await self.launch(artifact_generator=artifact_generator)

    def path_of(self, artifact: Artifact) -> Path:
        return Path(self.directory) / artifact.name

    async def write(self, artifact: Artifact, content: bytes) -> ArtifactRecord:
        """
        Write the bytes of an artifact and record their digest.

        :param artifact: the artifact
        :param content: its serialized bytes
        :return: the record
        """
        path = self.path_of(artifact)
        await asyncify(path.parent.mkdir)(parents=True, exist_ok=True)
        async with aiofiles.open(path, "wb") as file:
            await file.write(content)
        record = ArtifactRecord(
            exporter_name=self.get_name(),
            name=artifact.name,
            path=str(path),
            sha256=await asyncify(sha256_digest)(content),
            size=len(content),
        )
        self.records[artifact.name] = record
        logger.debug(f"Wrote {path} ({record.size} bytes).")
        return record

    @classmethod
    @abstractmethod
    def get_name(cls) -> str:
        """
        Get the name of the exporter.

        :return: the Exporter's name
        """
        pass
