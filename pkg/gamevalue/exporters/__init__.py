from gamevalue.exporters.csv_exporter import CSVExporter
from gamevalue.exporters.exporter import Artifact
from gamevalue.exporters.exporter import ArtifactFormat
from gamevalue.exporters.exporter import ArtifactGenerator
from gamevalue.exporters.exporter import ArtifactRecord
from gamevalue.exporters.exporter import Exporter
from gamevalue.exporters.exporter import sha256_digest
from gamevalue.exporters.json_exporter import JSONExporter
from gamevalue.exporters.json_exporter import dump_json
from gamevalue.exporters.msgpack_exporter import MsgpackExporter
from gamevalue.exporters.stdout import StdoutExporter

__all__ = [
    "Artifact",
    "ArtifactFormat",
    "ArtifactGenerator",
    "ArtifactRecord",
    "CSVExporter",
    "Exporter",
    "JSONExporter",
    "MsgpackExporter",
    "StdoutExporter",
    "dump_json",
    "sha256_digest",
]
