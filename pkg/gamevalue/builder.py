import datetime
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Tuple

import msgpack
import orjson
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from gamevalue.candidates import CandidateValue
from gamevalue.candidates import decompose
from gamevalue.candidates import decomposition_box
from gamevalue.conditions import ConditionId
from gamevalue.conditions import Overall
from gamevalue.conditions import StratumSampler
from gamevalue.conditions import VerdictReport
from gamevalue.conditions import run_checks
from gamevalue.conditions import run_metadata
from gamevalue.conf import GameValueConfiguration
from gamevalue.conf import RunConfig
from gamevalue.exceptions import CandidateFormatError
from gamevalue.exceptions import ConfigurationError
from gamevalue.exceptions import HamiltonianHashMismatch
from gamevalue.exporters import Artifact
from gamevalue.exporters import ArtifactFormat
from gamevalue.exporters import ArtifactGenerator
from gamevalue.exporters import ArtifactRecord
from gamevalue.exporters import CSVExporter
from gamevalue.exporters import Exporter
from gamevalue.exporters import JSONExporter
from gamevalue.exporters import MsgpackExporter
from gamevalue.exporters import StdoutExporter
from gamevalue.exporters import dump_json
from gamevalue.exporters import sha256_digest
from gamevalue.games import GameDynamics
from gamevalue.games import GameKind
from gamevalue.games import synthesize
from gamevalue.games import verify_hamiltonian_identity
from gamevalue.hamiltonians import ClosedFormHamiltonian
from gamevalue.hamiltonians import HamiltonianModel
from gamevalue.hamiltonians import build_sample_set
from gamevalue.hamiltonians import hamiltonian_header
from gamevalue.hamiltonians import hamiltonian_table
from gamevalue.hamiltonians import homogenize
from gamevalue.hamiltonians import load_hamiltonian
from gamevalue.hamiltonians import mcshane_extend
from gamevalue.hamiltonians import verify_h123
from gamevalue.solvers import TerminalPayoff
from gamevalue.solvers import minimax_spot_check
from gamevalue.solvers import refinement_table
from gamevalue.solvers import solve_dp
from gamevalue.solvers import solve_lf

__all__ = [
    "EXIT_CODES",
    "CONFIGURATION_ERROR",
    "GameValue",
    "GameValueBuilder",
    "GameValueReport",
]

EXIT_CODES = {Overall.IN_VALF: 0, Overall.NOT_IN_VALF: 1, Overall.INCONCLUSIVE: 2}
CONFIGURATION_ERROR = 3

CANDIDATE_FILE = "candidate.json"
VERDICT_FILE = "verdict.json"
HAMILTONIAN_FILE = "hamiltonian.json"
TABLE_FILE = "hamiltonian.msgpack"
GAME_FILE = "game.json"
VERIFY_FILE = "verify.json"
GRID_FILE = "grid.csv"
REPORT_FILE = "report.json"


class GameValueReport(BaseModel):
    """
    GameValue report to store the running statistics of a command.
    """

    command: str | None = None
    start_time: datetime.datetime | None = None
    end_time: datetime.datetime | None = None
    exit_code: int | None = None
    artifacts: Dict[str, ArtifactRecord] = Field(default_factory=dict)


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        return orjson.loads(path.read_bytes())
    except OSError as exception:
        raise ConfigurationError(f"Cannot read {path}: {exception}") from exception
    except orjson.JSONDecodeError as exception:
        raise CandidateFormatError(f"{path} is not valid JSON: {exception}") from exception


def _summary(name: str, lines: List[str]) -> Artifact:
    return Artifact(name=name, format=ArtifactFormat.SUMMARY, document={"lines": lines})


class GameValue:
    """
    GameValue instance: the check, synth, verify and report commands over one run configuration.
    """

    configuration: GameValueConfiguration
    run_config: RunConfig
    exporters: List[Exporter]
    report: GameValueReport

    def __init__(
        self, configuration: GameValueConfiguration, run_config: RunConfig, exporters: List[Exporter]
    ) -> None:
        self.configuration = configuration
        self.run_config = run_config
        self.exporters = exporters
        self.report = GameValueReport()

    @property
    def output(self) -> Path:
        return Path(self.run_config.output)

    def _start(self, command: str) -> None:
        self.report = GameValueReport(command=command, start_time=datetime.datetime.now())

    def _finish(self, exit_code: int) -> int:
        self.report.exit_code = exit_code
        self.report.end_time = datetime.datetime.now()
        logger.info(f"{self.report.command} finished with exit code {exit_code}.")
        return exit_code

    def export(self, artifacts: List[Artifact]) -> Dict[str, ArtifactRecord]:
        """
        Hand the artifacts to every exporter.
        """
        generator = ArtifactGenerator(artifacts=artifacts)
        for exporter in self.exporters:
            exporter.directory = str(self.output)
            self.report.artifacts.update(exporter.export([generator]))
        return self.report.artifacts

    def check(self, candidate_path: str | Path, report_name: str = VERDICT_FILE) -> Tuple[VerdictReport, int]:
        """
        Check the candidate and write its verdict next to a copy of the candidate.

        :param candidate_path: the candidate JSON file
        :param report_name: the file name of the verdict
        :return: the verdict and the exit code
        """
        self._start("check")
        candidate = CandidateValue.from_file(candidate_path)
        verdict = run_checks(candidate, self.run_config).verdict
        self.export(
            [
                Artifact(name=CANDIDATE_FILE, format=ArtifactFormat.JSON, document=candidate.to_document()),
                Artifact(name=report_name, format=ArtifactFormat.JSON, document=verdict.to_document()),
                _summary(
                    "check",
                    [f"{candidate.name}: {verdict.overall.value}"]
                    + [f"  {c.condition.value}: {c.status.value}" for c in verdict.conditions],
                ),
            ]
        )
        return verdict, self._finish(EXIT_CODES[verdict.overall])

    def _source(self, source: Path) -> Tuple[CandidateValue, List]:
        """
        A candidate file, or a verdict whose candidate copy lies next to it and whose witnesses are re-sampled.
        """
        document = _read_json(source)
        if "conditions" not in document:
            return CandidateValue.from_document(document, name=source.stem), []
        verdict = VerdictReport.model_validate(document)
        candidate = CandidateValue.from_document(_read_json(source.parent / CANDIDATE_FILE), name=verdict.candidate)
        return candidate, verdict.witness_positions()

    def synth(self, source: str | Path, hamiltonian_path: str | Path | None = None) -> int:
        """
        Build the Hamiltonian and the game of a candidate and write their dumps.

        :param source: a candidate file or a verdict file
        :param hamiltonian_path: a closed-form Hamiltonian used instead of the extension
        :return: the exit code
        """
        self._start("synth")
        config = self.run_config
        candidate, witnesses = self._source(Path(source))
        result = run_checks(candidate, config, extra_positions=witnesses)
        verdict = result.verdict
        unverified = verdict.overall != Overall.IN_VALF
        if unverified and not config.force:
            logger.error(f"{candidate.name} is {verdict.overall.value}: use --force to synthesize anyway.")
            return self._finish(EXIT_CODES[verdict.overall])
        if unverified:
            logger.warning(f"Synthesizing from a {verdict.overall.value} verdict: the premise is unverified.")

        hamiltonian: HamiltonianModel
        if hamiltonian_path is not None:
            hamiltonian = ClosedFormHamiltonian.from_file(hamiltonian_path, box=config.box, seed=config.seed)
            if hamiltonian.frame != candidate.frame:
                raise ConfigurationError(f"The Hamiltonian frame {hamiltonian.frame} differs from {candidate.frame}.")
        else:
            samples = build_sample_set(
                result.partial, verdict.condition(ConditionId.E4), candidate.frame, config.box, force=config.force
            )
            hamiltonian = homogenize(mcshane_extend(samples), probes=config.sampling.probe_points, seed=config.seed)
        regularity = verify_h123(hamiltonian, box=config.box, s_radius=config.game.s_radius, seed=config.seed)
        game = synthesize(
            GameKind(config.kind),
            hamiltonian,
            regularity,
            gate_samples=config.game.gate_samples,
            gate_delta=config.game.gate_delta,
            seed=config.seed,
        )
        identity = verify_hamiltonian_identity(
            game,
            samples=config.game.samples,
            delta=config.game.delta,
            box=config.box,
            s_radius=config.game.s_radius,
            seed=config.seed,
            strict=False,
        )

        artifacts = [
            Artifact(name=CANDIDATE_FILE, format=ArtifactFormat.JSON, document=candidate.to_document()),
            Artifact(name=VERDICT_FILE, format=ArtifactFormat.JSON, document=verdict.to_document()),
        ]
        table = hamiltonian_table(hamiltonian)
        table_digest = None
        if table is not None:
            table_artifact = Artifact(name=TABLE_FILE, format=ArtifactFormat.MSGPACK, document=table)
            table_digest = sha256_digest(MsgpackExporter.serialize(table_artifact))
            artifacts.append(table_artifact)
        header = hamiltonian_header(hamiltonian, TABLE_FILE if table is not None else None, table_digest)
        artifacts.append(Artifact(name=HAMILTONIAN_FILE, format=ArtifactFormat.JSON, document=header))
        artifacts.append(
            Artifact(
                name=GAME_FILE,
                format=ArtifactFormat.JSON,
                document={
                    "game": game.describe(),
                    "hamiltonian": {"file": HAMILTONIAN_FILE, "sha256": sha256_digest(dump_json(header))},
                    "unverified_premise": unverified,
                    "verdict": verdict.overall.value,
                    "regularity": regularity.model_dump(mode="json"),
                    "identity": identity.model_dump(mode="json"),
                    "config": config.model_dump(mode="json"),
                    "metadata": run_metadata(),
                },
            )
        )
        artifacts.append(
            _summary(
                "synth",
                [
                    f"{candidate.name}: {game.kind.value} game, upsilon {game.upsilon:.4g}, "
                    f"growth constant {game.growth_constant:.4g}",
                    f"  identity max error {identity.max_error:.3g} (tolerance {identity.max_tolerance:.3g})",
                    f"  unverified premise: {unverified}",
                ],
            )
        )
        self.export(artifacts)
        exit_code = EXIT_CODES[verdict.overall] if identity.passed else EXIT_CODES[Overall.INCONCLUSIVE]
        return self._finish(exit_code)

    def load_game(self, directory: Path) -> Tuple[CandidateValue, HamiltonianModel, GameDynamics]:
        """
        Read the dumps of a synthesized game, checking the digests that chain them.
        """
        game_document = _read_json(directory / GAME_FILE)
        reference = game_document["hamiltonian"]
        try:
            header_bytes = (directory / reference["file"]).read_bytes()
        except OSError as exception:
            raise ConfigurationError(f"Cannot read the Hamiltonian dump: {exception}") from exception
        if sha256_digest(header_bytes) != reference["sha256"]:
            raise HamiltonianHashMismatch(f"{reference['file']} does not match the digest recorded in {GAME_FILE}.")
        header = orjson.loads(header_bytes)
        table = None
        if "table" in header:
            table_bytes = (directory / header["table"]["name"]).read_bytes()
            if sha256_digest(table_bytes) != header["table"]["sha256"]:
                raise HamiltonianHashMismatch(f"{header['table']['name']} does not match its recorded digest.")
            table = msgpack.unpackb(table_bytes, raw=False)
        hamiltonian = load_hamiltonian(header, table)
        candidate = CandidateValue.from_file(directory / CANDIDATE_FILE)
        return candidate, hamiltonian, GameDynamics.from_document(game_document["game"], hamiltonian)

    def verify(self, game_directory: str | Path) -> int:
        """
        Solve the Hamilton-Jacobi problem of a synthesized game and compare it with the candidate.

        :param game_directory: the output directory of synth
        :return: 0 when the numerical certificate holds, 2 otherwise
        """
        self._start("verify")
        config = self.run_config
        candidate, hamiltonian, game = self.load_game(Path(game_directory))
        terminal = TerminalPayoff.from_candidate(candidate, box=config.box, seed=config.seed)
        document: Dict[str, Any] = {
            "scheme": config.scheme,
            "certificate": "consistency" if config.scheme == "dp" else "primary",
            "terminal_growth": terminal.growth_constant,
        }
        if config.scheme == "dp":
            field = solve_dp(game, terminal, box=config.box, settings=config.grid, delta=config.game.dp_delta)
            stats = field.compare_with(candidate, config.grid.tolerance)
        else:
            field = solve_lf(hamiltonian, terminal, box=config.box, settings=config.grid)
            stats = field.compare_with(candidate, config.grid.tolerance)
            if config.grid.refine:
                table, _ = refinement_table(
                    hamiltonian, terminal, candidate, box=config.box, settings=config.grid, coarse=stats
                )
                document["refinement"] = table.model_dump(mode="json")
        document["errors"] = stats.model_dump(mode="json")

        form = decompose(candidate, box=decomposition_box(config.box), feasibility=config.tolerances.feasibility)
        sampler = StratumSampler(
            form=form,
            box=config.box,
            lattice_points=max(2, config.sampling.lattice_points // 2),
            interior_times=max(1, config.sampling.interior_times // 2),
            max_stratum_order=config.sampling.max_stratum_order,
        )
        positions, _ = sampler.positions()
        minimax = minimax_spot_check(
            form, hamiltonian, positions, tolerances=config.tolerances, sampling=config.sampling, seed=config.seed
        )
        document["minimax"] = minimax.model_dump(mode="json")
        document["config"] = config.model_dump(mode="json")
        passed = stats.passed and minimax.passed
        document["passed"] = passed

        header, rows = field.dump_rows(candidate)
        self.export(
            [
                Artifact(name=VERIFY_FILE, format=ArtifactFormat.JSON, document=document),
                Artifact(name=GRID_FILE, format=ArtifactFormat.CSV, header=header, rows=rows),
                _summary(
                    "verify",
                    [
                        f"{candidate.name}: {stats.scheme.value} max error {stats.max_error:.4g} "
                        f"(tolerance {stats.tolerance:.4g}), minimax violations {len(minimax.violations)}",
                    ],
                ),
            ]
        )
        return self._finish(0 if passed else EXIT_CODES[Overall.INCONCLUSIVE])

    def summarize(self, directory: str | Path) -> int:
        """
        Merge the verdict, game and verification documents of a directory into one report.
        """
        self._start("report")
        directory = Path(directory)
        merged: Dict[str, Any] = {}
        lines: List[str] = []
        exit_code = 0
        if (directory / VERDICT_FILE).exists():
            verdict = VerdictReport.from_file(directory / VERDICT_FILE)
            merged["verdict"] = verdict.to_document(with_metadata=False)
            lines.append(f"Verdict on {verdict.candidate}: {verdict.overall.value}")
            lines += [f"  {c.condition.value}: {c.status.value}" for c in verdict.conditions]
            exit_code = EXIT_CODES[verdict.overall]
        if (directory / GAME_FILE).exists():
            game = _read_json(directory / GAME_FILE)
            merged["game"] = {key: game[key] for key in ("game", "hamiltonian", "unverified_premise", "identity")}
            lines.append(
                f"Game: {game['game']['kind']}, identity max error {game['identity']['max_error']:.3g}, "
                f"unverified premise {game['unverified_premise']}"
            )
        if (directory / VERIFY_FILE).exists():
            verification = _read_json(directory / VERIFY_FILE)
            merged["verify"] = {key: verification[key] for key in ("scheme", "errors", "minimax", "passed")}
            lines.append(
                f"Verification ({verification['scheme']}): max error {verification['errors']['max_error']:.4g}, "
                f"passed {verification['passed']}"
            )
        if not merged:
            raise ConfigurationError(f"{directory} holds no {VERDICT_FILE}, {GAME_FILE} or {VERIFY_FILE}.")
        merged["summary"] = lines
        self.export(
            [
                Artifact(name=REPORT_FILE, format=ArtifactFormat.JSON, document=merged),
                _summary("report", lines),
            ]
        )
        return self._finish(exit_code)


class GameValueBuilder(BaseModel):
    """
    GameValue builder for building GameValue.
    """

    run_config: RunConfig = Field(default_factory=RunConfig)
    configuration: GameValueConfiguration | None = None
    exporters: List[Exporter] = Field(default_factory=list)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def with_run_config(self, run_config: RunConfig) -> "GameValueBuilder":
        """
        Set the run configuration.
        :param run_config: the run configuration
        :return:
        """
        self.run_config = run_config
        return self

    def with_exporter(self, exporter: Exporter) -> "GameValueBuilder":
        """
        Add an exporter to the builder.
        :param exporter: the exporter
        :return:
        """
        self.exporters.append(exporter)
        return self

    def build(self) -> GameValue:
        """
        Build GameValue with its configuration, writing every artifact format by default.
        """
        configuration = self.configuration or GameValueConfiguration(
            seed=self.run_config.seed, max_dimension=self.run_config.max_dimension, workers=self.run_config.workers
        )
        run_config = self.run_config.model_copy(
            update={
                "seed": configuration.seed,
                "max_dimension": configuration.max_dimension,
                "workers": configuration.workers,
            }
        )
        exporters = self.exporters or [JSONExporter(), MsgpackExporter(), CSVExporter(), StdoutExporter()]
        return GameValue(configuration=configuration, run_config=run_config, exporters=exporters)
