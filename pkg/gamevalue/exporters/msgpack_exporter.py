import msgpack
from asyncer import asyncify

from gamevalue.exporters.exporter import Artifact
from gamevalue.exporters.exporter import ArtifactFormat
from gamevalue.exporters.exporter import ArtifactGenerator
from gamevalue.exporters.exporter import Exporter

__all__ = [
    "MsgpackExporter",
]


class MsgpackExporter(Exporter):
    """
    Write the binary sample tables.
    """

    async def launch(self, artifact_generator: ArtifactGenerator) -> None:
        async for artifact in artifact_generator.generate():
            if artifact.format != ArtifactFormat.MSGPACK:
                continue
            await self.write(artifact, await asyncify(self.serialize)(artifact))

    @staticmethod
    def serialize(artifact: Artifact) -> bytes:
        return msgpack.packb(artifact.document or {}, use_bin_type=True)

    @classmethod
    def get_name(cls) -> str:
        return "Msgpack"
