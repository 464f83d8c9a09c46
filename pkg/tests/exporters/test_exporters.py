import msgpack
import numpy as np
import orjson

from gamevalue.exporters import Artifact
from gamevalue.exporters import ArtifactFormat
from gamevalue.exporters import ArtifactGenerator
from gamevalue.exporters import CSVExporter
from gamevalue.exporters import JSONExporter
from gamevalue.exporters import MsgpackExporter
from gamevalue.exporters import StdoutExporter
from gamevalue.exporters import dump_json
from gamevalue.exporters import sha256_digest


def generator() -> ArtifactGenerator:
    return ArtifactGenerator(
        artifacts=[
            Artifact(name="verdict.json", format=ArtifactFormat.JSON, document={"overall": "IN_VALF", "b": [1, 2]}),
            Artifact(name="hamiltonian.msgpack", format=ArtifactFormat.MSGPACK, document={"h": [0.5, -1.0]}),
            Artifact(
                name="grid.csv",
                format=ArtifactFormat.CSV,
                header=["t", "x1", "value"],
                rows=np.array([[0.0, -1.0, 0.25], [1.0, 1.0, 0.5]]),
            ),
            Artifact(name="summary", format=ArtifactFormat.SUMMARY, document={"lines": ["overall: IN_VALF"]}),
        ]
    )


def test_json_exporter_should_write_sorted_documents(tmp_path):
    records = JSONExporter(directory=str(tmp_path)).export([generator()])

    content = (tmp_path / "verdict.json").read_bytes()
    assert list(records) == ["verdict.json"]
    assert orjson.loads(content) == {"b": [1, 2], "overall": "IN_VALF"}
    assert content == dump_json({"overall": "IN_VALF", "b": [1, 2]})
    assert records["verdict.json"].sha256 == sha256_digest(content)
    assert records["verdict.json"].exporter_name == JSONExporter.get_name()
    assert records["verdict.json"].size == len(content)


def test_dump_json_should_not_depend_on_the_key_order():
    assert dump_json({"a": 1, "b": {"d": 2, "c": 3}}) == dump_json({"b": {"c": 3, "d": 2}, "a": 1})


def test_msgpack_exporter_should_write_binary_tables(tmp_path):
    records = MsgpackExporter(directory=str(tmp_path / "nested")).export([generator()])

    content = (tmp_path / "nested" / "hamiltonian.msgpack").read_bytes()
    assert msgpack.unpackb(content) == {"h": [0.5, -1.0]}
    assert records["hamiltonian.msgpack"].sha256 == sha256_digest(content)


def test_csv_exporter_should_write_a_header_line(tmp_path):
    CSVExporter(directory=str(tmp_path)).export([generator()])

    lines = (tmp_path / "grid.csv").read_text().splitlines()
    assert lines[0] == "t,x1,value"
    assert lines[1:] == ["0,-1,0.25", "1,1,0.5"]


def test_stdout_exporter_should_log_the_summary(caplog, tmp_path):
    records = StdoutExporter(directory=str(tmp_path)).export([generator()])

    assert "overall: IN_VALF" in caplog.text
    assert records["summary"].path is None
    assert not any(tmp_path.iterdir())
