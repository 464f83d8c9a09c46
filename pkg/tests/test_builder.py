import orjson
import pytest

from gamevalue import GameValueBuilder
from gamevalue.conditions import Overall
from gamevalue.exceptions import ConfigurationError
from gamevalue.exceptions import HamiltonianHashMismatch
from gamevalue.exporters import JSONExporter
from gamevalue.games import GameKind
from gamevalue.hamiltonians import Provenance


def test_builder_should_use_every_exporter_by_default(pipeline_config):
    gamevalue = GameValueBuilder(run_config=pipeline_config).build()

    assert [exporter.get_name() for exporter in gamevalue.exporters] == ["JSON", "Msgpack", "CSV", "Stdout"]
    assert gamevalue.configuration.seed == 0
    assert gamevalue.run_config == pipeline_config


def test_builder_should_keep_the_given_exporters(pipeline_config):
    gamevalue = GameValueBuilder().with_run_config(pipeline_config).with_exporter(JSONExporter()).build()

    assert [exporter.get_name() for exporter in gamevalue.exporters] == ["JSON"]


def test_constant_candidate_should_go_through_the_pipeline(pipeline_config, constant_document, write_json):
    candidate_path = write_json("constant.json", constant_document)
    gamevalue = GameValueBuilder(run_config=pipeline_config).build()
    output = gamevalue.output

    verdict, check_code = gamevalue.check(candidate_path)
    synth_code = gamevalue.synth(output / "verdict.json")
    candidate, hamiltonian, game = gamevalue.load_game(output)
    verify_code = gamevalue.verify(output)
    report_code = gamevalue.summarize(output)

    assert verdict.overall == Overall.IN_VALF
    assert (check_code, synth_code, verify_code, report_code) == (0, 0, 0, 0)
    assert candidate.name == "constant"
    assert hamiltonian.metadata.provenance == Provenance.MCSHANE
    assert hamiltonian.metadata.upsilon == 0.0
    assert game.kind == GameKind.MAXMIN
    verification = orjson.loads((output / "verify.json").read_bytes())
    assert verification["passed"] is True
    assert verification["errors"]["max_error"] == pytest.approx(0.0, abs=1e-12)
    report = orjson.loads((output / "report.json").read_bytes())
    assert set(report) == {"verdict", "game", "verify", "summary"}
    assert (output / "grid.csv").exists()
    assert (output / "hamiltonian.msgpack").exists()
    assert gamevalue.report.command == "report"
    assert gamevalue.report.exit_code == 0


def test_synth_should_use_a_closed_form_hamiltonian(pipeline_config, tent_document, write_json):
    hamiltonian_document = {
        "n": 1,
        "expr": {"op": "neg", "args": [{"op": "abs", "args": [{"var": "s", "i": 1}]}]},
        "gamma": 1.0,
        "upsilon": 1.0,
    }
    candidate_path = write_json("tent.json", tent_document)
    hamiltonian_path = write_json("abs.json", hamiltonian_document)
    config = pipeline_config.model_copy(update={"kind": "isaacs1d", "force": True})
    gamevalue = GameValueBuilder(run_config=config).build()

    exit_code = gamevalue.synth(candidate_path, hamiltonian_path=hamiltonian_path)
    _, hamiltonian, game = gamevalue.load_game(gamevalue.output)

    game_document = orjson.loads((gamevalue.output / "game.json").read_bytes())
    assert exit_code == 2
    assert game_document["verdict"] == Overall.INCONCLUSIVE.value
    assert game_document["unverified_premise"] is True
    assert hamiltonian.metadata.provenance == Provenance.CLOSED_FORM
    assert game.kind == GameKind.ISAACS_1D
    assert not (gamevalue.output / "hamiltonian.msgpack").exists()
    assert game_document["identity"]["max_error"] <= 1e-12


def test_synth_should_stop_on_a_rejected_candidate(pipeline_config, phi2_document, write_json):
    gamevalue = GameValueBuilder(run_config=pipeline_config).build()

    exit_code = gamevalue.synth(write_json("phi2.json", phi2_document))

    assert exit_code == 1
    assert not (gamevalue.output / "game.json").exists()


def test_load_game_should_detect_a_tampered_hamiltonian(pipeline_config, constant_document, write_json):
    gamevalue = GameValueBuilder(run_config=pipeline_config).build()
    gamevalue.synth(write_json("constant.json", constant_document))
    header = gamevalue.output / "hamiltonian.json"
    header.write_bytes(header.read_bytes() + b"\n")

    with pytest.raises(HamiltonianHashMismatch):
        gamevalue.verify(gamevalue.output)


def test_summarize_should_reject_an_empty_directory(pipeline_config, tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()

    with pytest.raises(ConfigurationError):
        GameValueBuilder(run_config=pipeline_config).build().summarize(empty)


def test_environment_seed_should_override_the_run_seed_with_a_warning(pipeline_config, monkeypatch, mocker):
    monkeypatch.setenv("GAMEVALUE_SEED", "7")
    mocked_logger = mocker.patch("gamevalue.conf.logger")

    gamevalue = GameValueBuilder(run_config=pipeline_config.model_copy(update={"seed": 3})).build()

    assert gamevalue.configuration.seed == 7
    assert gamevalue.run_config.seed == 7
    mocked_logger.warning.assert_called_once()
    assert "GAMEVALUE_SEED=7" in mocked_logger.warning.call_args.args[0]


def test_matching_environment_seed_should_not_warn(pipeline_config, monkeypatch, mocker):
    monkeypatch.setenv("GAMEVALUE_SEED", "3")
    mocked_logger = mocker.patch("gamevalue.conf.logger")

    gamevalue = GameValueBuilder(run_config=pipeline_config.model_copy(update={"seed": 3})).build()

    assert gamevalue.run_config.seed == 3
    mocked_logger.warning.assert_not_called()
