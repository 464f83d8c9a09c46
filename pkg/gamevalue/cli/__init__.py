from pathlib import Path
from typing import Callable
from typing import List
from typing import Optional
from typing import Tuple

import typer
from loguru import logger

from gamevalue.builder import CONFIGURATION_ERROR
from gamevalue.builder import EXIT_CODES
from gamevalue.builder import VERDICT_FILE
from gamevalue.builder import GameValueBuilder
from gamevalue.conditions import Overall
from gamevalue.conf import RunConfig
from gamevalue.exceptions import CandidateFormatError
from gamevalue.exceptions import ConfigurationError
from gamevalue.exceptions import GameValueException
from gamevalue.exceptions import HamiltonianHashMismatch

app = typer.Typer(help="Check, synthesize and verify value functions of differential games.")

CONFIG_OPTION = typer.Option(None, "--config", help="A JSON run configuration.")
SEED_OPTION = typer.Option(None, "--seed", help="Seed of every random draw.")
BOX_OPTION = typer.Option(None, "--box", help="Bounds a b of the spatial box.")


def run_command(action: Callable[[], int]) -> None:
    """
    Run a command and exit with its code: 0, 1 and 2 follow the verdict, 3 flags invalid inputs.
    """
    try:
        exit_code = action()
    except (ConfigurationError, CandidateFormatError, HamiltonianHashMismatch, OSError) as exception:
        logger.error(f"Invalid input: {exception}")
        exit_code = CONFIGURATION_ERROR
    except GameValueException as exception:
        logger.error(f"{type(exception).__name__}: {exception}")
        exit_code = EXIT_CODES[Overall.INCONCLUSIVE]
    except Exception as exception:
        logger.exception(f"Error in GameValue execution: {exception}")
        exit_code = CONFIGURATION_ERROR
    raise typer.Exit(code=exit_code)


def _box(box: Optional[Tuple[float, float]]) -> Optional[List[float]]:
    return list(box) if box is not None else None


@app.command(help="Check whether a candidate is a value function.")
def check(
    candidate: Path,
    box: Optional[Tuple[float, float]] = BOX_OPTION,
    samples: Optional[int] = typer.Option(None, "--samples", help="Lattice points per axis."),
    out: Optional[Path] = typer.Option(None, "--out", help="The verdict file."),
    config: Optional[Path] = CONFIG_OPTION,
    seed: Optional[int] = SEED_OPTION,
) -> None:
    """
    Check conditions E1 to E4 and write the verdict.
    """

    def action() -> int:
        run_config = RunConfig.from_file(
            config,
            box=_box(box),
            seed=seed,
            output=str(out.parent) if out is not None else None,
            **{"sampling.lattice_points": samples},
        )
        gamevalue = GameValueBuilder(run_config=run_config).build()
        _, exit_code = gamevalue.check(candidate, report_name=out.name if out is not None else VERDICT_FILE)
        return exit_code

    run_command(action)


@app.command(help="Synthesize the Hamiltonian and the game of a candidate.")
def synth(
    source: Path,
    kind: Optional[str] = typer.Option(None, "--kind", help="maxmin, minmax or isaacs1d."),
    out: Optional[Path] = typer.Option(None, "--out", help="The output directory."),
    hamiltonian: Optional[Path] = typer.Option(None, "--hamiltonian", help="A closed-form Hamiltonian file."),
    box: Optional[Tuple[float, float]] = BOX_OPTION,
    force: bool = typer.Option(False, "--force", help="Synthesize from an inconclusive verdict."),
    config: Optional[Path] = CONFIG_OPTION,
    seed: Optional[int] = SEED_OPTION,
) -> None:
    """
    Build the extension, the game and their dumps from a candidate or a verdict.
    """

    def action() -> int:
        run_config = RunConfig.from_file(
            config,
            kind=kind,
            output=str(out) if out is not None else None,
            box=_box(box),
            force=force or None,
            seed=seed,
        )
        return GameValueBuilder(run_config=run_config).build().synth(source, hamiltonian_path=hamiltonian)

    run_command(action)


@app.command(help="Solve the Hamilton-Jacobi problem of a synthesized game.")
def verify(
    game_directory: Path,
    scheme: Optional[str] = typer.Option(None, "--scheme", help="lf or dp."),
    grid: Optional[int] = typer.Option(None, "--grid", help="Grid points per axis."),
    tol: Optional[float] = typer.Option(None, "--tol", help="Largest accepted error."),
    dt: str = typer.Option("auto", "--dt", help="auto or a time step."),
    refine: Optional[bool] = typer.Option(None, "--refine/--no-refine", help="Rerun at half the spacing."),
    box: Optional[Tuple[float, float]] = BOX_OPTION,
    config: Optional[Path] = CONFIG_OPTION,
    seed: Optional[int] = SEED_OPTION,
) -> None:
    """
    Compare the numerical value of the game with the candidate.
    """

    def action() -> int:
        try:
            step = None if dt == "auto" else float(dt)
        except ValueError as exception:
            raise ConfigurationError(f"--dt takes auto or a number, got {dt!r}.") from exception
        run_config = RunConfig.from_file(
            config,
            scheme=scheme,
            box=_box(box),
            seed=seed,
            output=str(game_directory),
            **{"grid.points": grid, "grid.tolerance": tol, "grid.dt": step, "grid.refine": refine},
        )
        return GameValueBuilder(run_config=run_config).build().verify(game_directory)

    run_command(action)


@app.command(help="Merge the documents of an output directory into one report.")
def report(directory: Path) -> None:
    """
    Summarize a directory.
    """

    def action() -> int:
        run_config = RunConfig.from_file(None, output=str(directory))
        return GameValueBuilder(run_config=run_config).build().summarize(directory)

    run_command(action)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
