from loguru import logger

from gamevalue.exporters.exporter import ArtifactFormat
from gamevalue.exporters.exporter import ArtifactGenerator
from gamevalue.exporters.exporter import ArtifactRecord
from gamevalue.exporters.exporter import Exporter

__all__ = [
    "StdoutExporter",
]


class StdoutExporter(Exporter):
    """
    Print the summary lines of the run.
    """

    async def launch(self, artifact_generator: ArtifactGenerator) -> None:
        async for artifact in artifact_generator.generate():
            if artifact.format != ArtifactFormat.SUMMARY:
                continue
            lines = (artifact.document or {}).get("lines", [])
            for line in lines:
                logger.info(line)
            self.records[artifact.name] = ArtifactRecord(exporter_name=self.get_name(), name=artifact.name)

    @classmethod
    def get_name(cls) -> str:
        return "Stdout"
