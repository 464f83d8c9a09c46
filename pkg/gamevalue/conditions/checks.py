from collections import defaultdict
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

from gamevalue.conf import RefinementStep
from gamevalue.conf import Tolerances
from gamevalue.conditions.partial import ExtensionResult
from gamevalue.conditions.partial import ExtensionStatus
from gamevalue.conditions.partial import HOrigin
from gamevalue.conditions.partial import PartialHamiltonian
from gamevalue.conditions.partial import extend_h_e2
from gamevalue.conditions.verdict import ConditionId
from gamevalue.conditions.verdict import ConditionReport
from gamevalue.conditions.verdict import ConditionStatus
from gamevalue.conditions.verdict import Estimates
from gamevalue.conditions.verdict import Witness
from gamevalue.exceptions import EmptySampleSet
from gamevalue.exceptions import MissingHamiltonianValue
from gamevalue.exceptions import NotInHullError
from gamevalue.nonsmooth import CJClass
from gamevalue.nonsmooth import LimitingData
from gamevalue.nonsmooth.polytope import simplex_weights

__all__ = [
    "check_e1",
    "check_e2",
    "check_e3",
    "check_e4",
    "GrowthEstimate",
    "estimate_growth",
]

KEY_DIGITS = 9


def _floats(values: np.ndarray) -> List[float]:
    return [float(v) for v in np.ravel(values)]


def check_e1(analyses: List[LimitingData]) -> ConditionReport:
    """
    Check that pieces sharing a limiting spatial gradient share the time derivative.

    :param analyses: limiting data at the sampled positions
    :return: the E1 report
    """
    if not analyses:
        raise EmptySampleSet("E1 needs at least one sampled position.")
    witnesses = [
        Witness(
            position=ld.position,
            data={"s": list(entry.s), "h": [entry.h, *entry.conflicting_h], "pieces": list(entry.pieces)},
            message=f"Pieces {entry.pieces} share the gradient {entry.s} with different time derivatives.",
        )
        for ld in analyses
        for entry in ld.e1
        if entry.violation
    ]
    status = ConditionStatus.FAIL if witnesses else ConditionStatus.PASS
    logger.info(f"E1: {status.value} over {len(analyses)} positions.")
    return ConditionReport(condition=ConditionId.E1, status=status, witnesses=witnesses)


def _combinations(ld: LimitingData, extensions: List[ExtensionResult], samples: int, seed: int) -> np.ndarray:
    count = len(ld.e1)
    combos = [np.eye(count)]
    representations = [r for e in extensions for r in e.representations if len(r) == count]
    if representations:
        combos.append(np.array(representations))
    combos.append(simplex_weights(count, samples, seed))
    return np.vstack(combos)


def check_e2(
    analyses: List[LimitingData],
    partial: PartialHamiltonian,
    extensions: List[ExtensionResult],
    tolerances: Tolerances | None = None,
    combination_samples: int = 50,
    seed: int = 0,
) -> ConditionReport:
    """
    Check the convexity inequality of the partial Hamiltonian at CJ- and CJ+ positions.

    Tested combinations are the limiting gradients themselves, the representations found by the extension
    and random convex weights; a combination counts when (-sum(lambda h), sum(lambda s)) lies in the Dini set.

    :param analyses: limiting data at the sampled positions
    :param partial: the partial Hamiltonian with its extended values
    :param extensions: every extension attempted while building the partial Hamiltonian
    :param tolerances: numerical tolerances
    :param combination_samples: random convex combinations per position
    :param seed: seed of the random combinations
    :return: the E2 report
    """
    tolerances = tolerances or Tolerances()
    groups = partial.by_position()
    by_position: Dict[Tuple[float, ...], List[ExtensionResult]] = defaultdict(list)
    for extension in extensions:
        by_position[extension.position.key()].append(extension)

    witnesses: List[Witness] = []
    for extension in extensions:
        if extension.status == ExtensionStatus.ILL_DEFINED:
            witnesses.append(
                Witness(
                    position=extension.position,
                    data={
                        "s": list(extension.s),
                        "low": extension.low,
                        "high": extension.high,
                        "representations": [list(r) for r in extension.representations],
                    },
                    message=f"The extension at s={extension.s} is ill-defined: [{extension.low}, {extension.high}].",
                    extension_dependent=True,
                )
            )

    tested, largest_gap = 0, 0.0
    for ld in analyses:
        if ld.cj_class not in (CJClass.CJMINUS, CJClass.CJPLUS):
            continue
        upper = ld.cj_class == CJClass.CJMINUS
        dini = ld.sub if upper else ld.sup
        key = ld.position.key()
        local = PartialHamiltonian(samples=groups.get(key, []))
        gradients, h = ld.gradients(), ld.h_values()
        for weights in _combinations(ld, by_position.get(key, []), combination_samples, seed):
            target, combined = weights @ gradients, float(weights @ h)
            if not dini.contains(np.concatenate([[-combined], target]), tolerances.feasibility):
                continue
            dependent = not bool(np.any(np.max(np.abs(gradients - target), axis=1) <= tolerances.merge))
            try:
                value = local.value_at(ld.position, target, tolerances.merge)
            except MissingHamiltonianValue:
                try:
                    extension = extend_h_e2(ld, target, tolerances.condition)
                except NotInHullError:
                    continue
                if extension.status == ExtensionStatus.ILL_DEFINED:
                    continue
                value = float(extension.value)
            tested += 1
            largest_gap = max(largest_gap, abs(value - combined))
            violated = value > combined + tolerances.condition if upper else value < combined - tolerances.condition
            if violated:
                witnesses.append(
                    Witness(
                        position=ld.position,
                        data={"weights": _floats(weights), "s": _floats(target), "h": value, "combined": combined},
                        message=(
                            f"h({tuple(_floats(target))}) = {value} breaks the "
                            f"{'upper' if upper else 'lower'} bound {combined} of the combination."
                        ),
                        extension_dependent=dependent,
                    )
                )
    status = ConditionStatus.FAIL if witnesses else ConditionStatus.PASS
    logger.info(f"E2: {status.value} over {tested} tested combinations, largest equality gap {largest_gap:.3g}.")
    return ConditionReport(
        condition=ConditionId.E2,
        status=status,
        witnesses=witnesses,
        extension_dependent=bool(witnesses) and all(w.extension_dependent for w in witnesses),
        details={"tested_combinations": tested, "max_equality_gap": largest_gap},
    )


def check_e3(partial: PartialHamiltonian, tolerances: Tolerances | None = None) -> ConditionReport:
    """
    Check positive homogeneity of the partial Hamiltonian along codirectional vectors at each position,
    and h = 0 at a vanishing gradient.

    :param partial: the partial Hamiltonian
    :param tolerances: numerical tolerances
    :return: the E3 report
    """
    tolerances = tolerances or Tolerances()
    tolerance = tolerances.condition
    witnesses: List[Witness] = []
    pairs = 0
    for samples in partial.by_position().values():
        s = np.array([sample.s for sample in samples], dtype=float)
        h = np.array([sample.h for sample in samples], dtype=float)
        origins = [sample.origin for sample in samples]
        norms = np.linalg.norm(s, axis=1)
        for k in np.flatnonzero(norms <= tolerance):
            if abs(h[k]) > tolerance:
                witnesses.append(
                    Witness(
                        position=samples[k].position,
                        data={"s": _floats(s[k]), "h": float(h[k])},
                        message=f"h = {h[k]} at a vanishing gradient.",
                        extension_dependent=origins[k] == HOrigin.E2,
                    )
                )
        nonzero = np.flatnonzero(norms > tolerance)
        for i, j in ((i, j) for a, i in enumerate(nonzero) for j in nonzero[a + 1 :]):
            if abs(float(s[i] @ s[j]) - norms[i] * norms[j]) > tolerance:
                continue
            pairs += 1
            mismatch = abs(norms[j] * h[i] - norms[i] * h[j])
            if mismatch > tolerance * (1.0 + max(abs(h[i]), abs(h[j]))):
                witnesses.append(
                    Witness(
                        position=samples[i].position,
                        data={"s": [_floats(s[i]), _floats(s[j])], "h": [float(h[i]), float(h[j])]},
                        message=f"Codirectional gradients {tuple(s[i])} and {tuple(s[j])} scale h inconsistently.",
                        extension_dependent=HOrigin.E2 in (origins[i], origins[j]),
                    )
                )
    status = ConditionStatus.FAIL if witnesses else ConditionStatus.PASS
    logger.info(f"E3: {status.value} over {pairs} codirectional pairs.")
    return ConditionReport(
        condition=ConditionId.E3,
        status=status,
        witnesses=witnesses,
        extension_dependent=bool(witnesses) and all(w.extension_dependent for w in witnesses),
        details={"codirectional_pairs": pairs},
    )


class GrowthEstimate(BaseModel):
    """
    Growth and difference-quotient estimates of the scaled partial Hamiltonian over one sampled box.
    """

    gamma: float
    lipschitz: float
    modulus: float
    samples: int
    argmax: List[float] = []


def _pairwise_quotients(groups: Dict[Tuple[float, ...], List[int]], numerator, denominator) -> float:
    best = 0.0
    for indices in groups.values():
        if len(indices) < 2:
            continue
        idx = np.array(indices)
        top, bottom = numerator(idx), denominator(idx)
        valid = bottom > 1e-12
        if np.any(valid):
            best = max(best, float(np.max(top[valid] / bottom[valid])))
    return best


def estimate_growth(partial: PartialHamiltonian) -> GrowthEstimate:
    """
    Estimate gamma, the x-Lipschitz constant and the time modulus slope from the sampled graph.

    Gamma bounds |h| / (1 + |x|) and the unit-vector quotients at equal positions; the other two constants
    are difference quotients over pairs sharing the unit vector and, respectively, the time or the point.
    """
    rows, units, values, _ = partial.normalized_arrays()
    if len(values) == 0:
        return GrowthEstimate(gamma=0.0, lipschitz=0.0, modulus=0.0, samples=0)
    t, x = rows[:, 0], rows[:, 1:]
    weight = 1.0 + np.linalg.norm(x, axis=1)
    ratios = np.abs(values) / weight
    best = int(np.argmax(ratios))
    rounded_units = np.round(units, KEY_DIGITS) + 0.0
    rounded_rows = np.round(rows, KEY_DIGITS) + 0.0

    same_position: Dict[Tuple[float, ...], List[int]] = defaultdict(list)
    same_time: Dict[Tuple[float, ...], List[int]] = defaultdict(list)
    same_point: Dict[Tuple[float, ...], List[int]] = defaultdict(list)
    for k in range(len(values)):
        same_position[tuple(rounded_rows[k])].append(k)
        same_time[(rounded_rows[k, 0], *rounded_units[k])].append(k)
        same_point[(*rounded_rows[k, 1:], *rounded_units[k])].append(k)

    def differences(idx: np.ndarray) -> np.ndarray:
        return np.abs(values[idx][:, None] - values[idx][None, :])

    gamma_s = _pairwise_quotients(
        same_position,
        differences,
        lambda idx: weight[idx][:, None] * np.linalg.norm(units[idx][:, None] - units[idx][None, :], axis=-1),
    )
    lipschitz = _pairwise_quotients(
        same_time,
        differences,
        lambda idx: np.linalg.norm(x[idx][:, None] - x[idx][None, :], axis=-1),
    )
    modulus = _pairwise_quotients(
        same_point,
        differences,
        lambda idx: np.abs(t[idx][:, None] - t[idx][None, :]),
    )
    return GrowthEstimate(
        gamma=max(float(ratios[best]), gamma_s),
        lipschitz=lipschitz,
        modulus=modulus,
        samples=len(values),
        argmax=_floats(np.concatenate([rows[best], units[best]])),
    )


def _diverging(sequence: List[float], threshold: float) -> bool:
    limit = threshold * (1.0 - 1e-9)
    floor = 1e-12
    steps = zip(sequence, sequence[1:])
    if any(after >= limit * max(before, floor) and after > floor for before, after in steps):
        return True
    return sequence[-1] > floor and sequence[-1] >= limit * max(sequence[0], floor)


def _stable(sequence: List[float], stability: float) -> bool:
    if len(sequence) < 2:
        return True
    before, after = sequence[-2], sequence[-1]
    if before <= 1e-9 and after <= 1e-9:
        return True
    return abs(after - before) < stability * max(abs(before), abs(after))


def check_e4(
    boxes: List[PartialHamiltonian],
    schedule: List[RefinementStep],
    tolerances: Tolerances | None = None,
) -> ConditionReport:
    """
    Check sublinear growth and continuity of the scaled partial Hamiltonian along a refinement schedule.

    Estimates are computed on the limiting gradients alone and on the extended graph; divergence of the
    former rejects the candidate, divergence of the latter only the canonical extension.

    :param boxes: the partial Hamiltonian sampled on each box of the schedule
    :param schedule: the refinement steps the boxes were sampled with
    :param tolerances: growth threshold and stability tolerance
    :return: the E4 report
    """
    if not boxes:
        raise EmptySampleSet("E4 needs a nonempty refinement schedule.")
    tolerances = tolerances or Tolerances()
    full = [estimate_growth(box) for box in boxes]
    limiting = [estimate_growth(box.restricted(HOrigin.E1)) for box in boxes]
    sequences = {
        "limiting": {name: [getattr(e, name) for e in limiting] for name in ("gamma", "lipschitz", "modulus")},
        "extended": {name: [getattr(e, name) for e in full] for name in ("gamma", "lipschitz", "modulus")},
    }
    details = {
        "time_floors": [step.time_floor for step in schedule],
        "lattice_points": [step.lattice_points for step in schedule],
        "sequences": sequences,
    }

    witnesses: List[Witness] = []
    for graph, estimates in (("limiting", limiting), ("extended", full)):
        for name, sequence in sequences[graph].items():
            if _diverging(sequence, tolerances.growth_threshold):
                witnesses.append(
                    Witness(
                        data={
                            "graph": graph,
                            "estimate": name,
                            "sequence": sequence,
                            "time_floors": details["time_floors"],
                            "argmax": [e.argmax for e in estimates],
                        },
                        message=f"The {name} estimate on the {graph} graph diverges: {sequence}.",
                        extension_dependent=graph == "extended",
                    )
                )
    if witnesses:
        dependent = all(w.extension_dependent for w in witnesses)
        logger.info(f"E4: FAIL ({'extension only' if dependent else 'limiting gradients'}).")
        return ConditionReport(
            condition=ConditionId.E4,
            status=ConditionStatus.FAIL,
            witnesses=witnesses,
            extension_dependent=dependent,
            details=details,
        )
    stable = all(
        _stable(sequence, tolerances.stability)
        for graph in sequences.values()
        for sequence in graph.values()
    )
    status = ConditionStatus.PASS if stable else ConditionStatus.INCONCLUSIVE
    last = limiting[-1]
    estimates = Estimates(gamma=last.gamma, lipschitz=last.lipschitz, modulus=last.modulus)
    logger.info(f"E4: {status.value} with gamma={last.gamma:.4g}, L={last.lipschitz:.4g}, W={last.modulus:.4g}.")
    return ConditionReport(condition=ConditionId.E4, status=status, estimates=estimates, details=details)
