import orjson
from asyncer import asyncify

from gamevalue.exporters.exporter import Artifact
from gamevalue.exporters.exporter import ArtifactFormat
from gamevalue.exporters.exporter import ArtifactGenerator
from gamevalue.exporters.exporter import Exporter

__all__ = [
    "JSONExporter",
    "dump_json",
]


def dump_json(document: dict) -> bytes:
    """
    Indented JSON with sorted keys, so equal documents give equal bytes.
    """
    return orjson.dumps(document, option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY)


class JSONExporter(Exporter):
    """
    Write the JSON documents.
    """

    async def launch(self, artifact_generator: ArtifactGenerator) -> None:
        async for artifact in artifact_generator.generate():
            if artifact.format != ArtifactFormat.JSON:
                continue
            await self.write(artifact, await asyncify(self.serialize)(artifact))

    @staticmethod
    def serialize(artifact: Artifact) -> bytes:
        return dump_json(artifact.document or {})

    @classmethod
    def get_name(cls) -> str:
        return "JSON"
