import io

import numpy as np
from asyncer import asyncify

from gamevalue.exporters.exporter import Artifact
from gamevalue.exporters.exporter import ArtifactFormat
from gamevalue.exporters.exporter import ArtifactGenerator
from gamevalue.exporters.exporter import Exporter

__all__ = [
    "CSVExporter",
]


class CSVExporter(Exporter):
    """
    Write the grid dumps as CSV with a header line.
    """

    float_format: str = "%.10g"

    async def launch(self, artifact_generator: ArtifactGenerator) -> None:
        async for artifact in artifact_generator.generate():
            if artifact.format != ArtifactFormat.CSV:
                continue
            await self.write(artifact, await asyncify(self.serialize)(artifact))

    def serialize(self, artifact: Artifact) -> bytes:
        buffer = io.StringIO()
        rows = artifact.rows if artifact.rows is not None else np.empty((0, len(artifact.header)))
        np.savetxt(buffer, rows, delimiter=",", header=",".join(artifact.header), comments="", fmt=self.float_format)
        return buffer.getvalue().encode("utf-8")

    @classmethod
    def get_name(cls) -> str:
        return "CSV"
