import asyncio
import platform
from datetime import datetime
from datetime import timezone
from typing import Any
from typing import Dict
from typing import List

import anyio
import psutil
from asyncer import asyncify
from loguru import logger
from pydantic import BaseModel
from pydantic import ConfigDict

from gamevalue.candidates import CandidateValue
from gamevalue.candidates import PiecewiseForm
from gamevalue.candidates import Position
from gamevalue.candidates import decompose
from gamevalue.candidates import decomposition_box
from gamevalue.conf import RunConfig
from gamevalue.conditions.checks import check_e1
from gamevalue.conditions.checks import check_e2
from gamevalue.conditions.checks import check_e3
from gamevalue.conditions.checks import check_e4
from gamevalue.conditions.partial import ExtensionResult
from gamevalue.conditions.partial import PartialHamiltonian
from gamevalue.conditions.partial import build_partial
from gamevalue.conditions.sampler import StratumSampler
from gamevalue.conditions.sampler import dedupe_positions
from gamevalue.conditions.verdict import SamplingDescription
from gamevalue.conditions.verdict import VerdictReport
from gamevalue.conditions.verdict import aggregate
from gamevalue.nonsmooth import LimitingData
from gamevalue.nonsmooth import limiting_data

__all__ = [
    "CheckResult",
    "analyze_positions",
    "full_check",
    "run_checks",
    "run_metadata",
]


def run_metadata() -> Dict[str, Any]:
    """
    The non-deterministic part of a report.
    """
    from gamevalue import __version__

    return {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "platform": platform.platform(),
        "python": platform.python_version(),
        "cpu_count": psutil.cpu_count(),
        "version": __version__,
    }


class CheckResult(BaseModel):
    """
    The verdict together with the objects the synthesis stage builds on.
    """

    verdict: VerdictReport
    form: PiecewiseForm
    partial: PartialHamiltonian
    extensions: List[ExtensionResult]
    analyses: List[LimitingData]

    model_config = ConfigDict(arbitrary_types_allowed=True)


async def _gather(form: PiecewiseForm, positions: List[Position], config: RunConfig) -> List[LimitingData]:
    def analyze(p: Position) -> LimitingData:
        return limiting_data(
            form,
            p,
            tolerances=config.tolerances,
            sampling=config.sampling,
            seed=config.seed,
            max_dimension=config.max_dimension,
        )

    limiter = anyio.CapacityLimiter(config.workers)
    return list(await asyncio.gather(*(asyncify(analyze, limiter=limiter)(p) for p in positions)))


def analyze_positions(form: PiecewiseForm, positions: List[Position], config: RunConfig) -> List[LimitingData]:
    """
    Compute the limiting data at every position, keeping the input order.
    """
    return asyncio.run(_gather(form, positions, config))


def run_checks(
    candidate: CandidateValue, config: RunConfig, extra_positions: List[Position] | None = None
) -> CheckResult:
    """
    Decompose a candidate and check E1, the canonical extension, E2, E3 and E4 in that order.

    :param candidate: the candidate value function
    :param config: the run configuration
    :param extra_positions: positions sampled on top of the lattice, typically earlier witnesses
    :return: the verdict with the sampled partial Hamiltonian
    """
    logger.info(f"Checking {candidate.name} = {candidate.expr.render()}.")
    form = decompose(candidate, box=decomposition_box(config.box), feasibility=config.tolerances.feasibility)
    sampler = StratumSampler(
        form=form,
        box=config.box,
        lattice_points=config.sampling.lattice_points,
        interior_times=config.sampling.interior_times,
        max_stratum_order=config.sampling.max_stratum_order,
    )
    positions, stratum_count = sampler.positions()
    extra = [p for p in extra_positions or [] if candidate.frame.contains_time(p.t, strict=True)]
    positions = dedupe_positions(positions + extra)
    analyses = analyze_positions(form, positions, config)
    inconsistent = sum(ld.inconsistent for ld in analyses)
    if inconsistent:
        logger.warning(f"{inconsistent} positions have both Dini sets nonempty.")

    e1 = check_e1(analyses)
    partial, extensions = build_partial(analyses, config.tolerances.condition)
    e2 = check_e2(
        analyses,
        partial,
        extensions,
        tolerances=config.tolerances,
        combination_samples=config.sampling.combination_samples,
        seed=config.seed,
    )
    e3 = check_e3(partial, config.tolerances)
    boxes = []
    for step in config.refinement:
        box_analyses = analyze_positions(form, sampler.refinement_positions(step), config)
        boxes.append(build_partial(box_analyses, config.tolerances.condition)[0])
    e4 = check_e4(boxes, config.refinement, config.tolerances)

    conditions = [e1, e2, e3, e4]
    verdict = VerdictReport(
        candidate=candidate.name,
        conditions=conditions,
        overall=aggregate(conditions),
        sampling=SamplingDescription(
            lattice_points=config.sampling.lattice_points,
            interior_times=config.sampling.interior_times,
            max_stratum_order=config.sampling.max_stratum_order,
            e2_interior_samples=config.sampling.e2_interior_samples,
            combination_samples=config.sampling.combination_samples,
            positions=len(positions),
            stratum_positions=stratum_count,
            refinement=[step.model_dump() for step in config.refinement],
            seed=config.seed,
        ),
        metadata=run_metadata(),
    )
    logger.info(f"{candidate.name}: {verdict.overall.value}.")
    return CheckResult(verdict=verdict, form=form, partial=partial, extensions=extensions, analyses=analyses)


def full_check(
    candidate: CandidateValue, config: RunConfig, extra_positions: List[Position] | None = None
) -> VerdictReport:
    """
    The verdict on a candidate.
    """
    return run_checks(candidate, config, extra_positions).verdict
