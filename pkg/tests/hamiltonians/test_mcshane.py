import numpy as np
import orjson
import pytest

from gamevalue.candidates import GameFrame
from gamevalue.conditions import ConditionId
from gamevalue.conditions import ConditionReport
from gamevalue.conditions import ConditionStatus
from gamevalue.conditions import Estimates
from gamevalue.conditions import PartialHamiltonian
from gamevalue.conditions import run_checks
from gamevalue.exceptions import ConditionNotPassed
from gamevalue.exceptions import EmptySampleSet
from gamevalue.hamiltonians import ENatSamples
from gamevalue.hamiltonians import Provenance
from gamevalue.hamiltonians import build_sample_set
from gamevalue.hamiltonians import calibrate_moduli
from gamevalue.hamiltonians import hamiltonian_header
from gamevalue.hamiltonians import hamiltonian_table
from gamevalue.hamiltonians import homogenize
from gamevalue.hamiltonians import load_hamiltonian
from gamevalue.hamiltonians import mcshane_extend

FRAME = GameFrame(n=1, t0=0.0, theta0=1.0)


@pytest.fixture
def samples() -> ENatSamples:
    return ENatSamples(
        frame=FRAME,
        box=(-1.0, 1.0),
        times=np.array([0.2, 0.5, 0.8, 0.5]),
        points=np.array([[0.0], [0.5], [-0.5], [0.5]]),
        units=np.array([[1.0], [-1.0], [1.0], [1.0]]),
        values=np.array([0.3, -0.4, 0.1, 0.9]),
        gamma=0.1,
        lipschitz=0.1,
        modulus=0.0,
    )


def test_calibrate_moduli_should_cover_every_sample_pair(samples):
    calibrated = calibrate_moduli(samples)

    assert calibrated.calibrated
    assert calibrated.gamma >= 0.9 / 1.5
    weight = 1.0 + np.abs(calibrated.points[:, 0])
    for i in range(len(calibrated)):
        for j in range(len(calibrated)):
            bound = (
                calibrated.modulus * abs(calibrated.times[i] - calibrated.times[j])
                + calibrated.lipschitz * abs(calibrated.points[i, 0] - calibrated.points[j, 0])
                + calibrated.gamma * weight[i] * abs(calibrated.units[i, 0] - calibrated.units[j, 0])
            )
            assert calibrated.values[j] - calibrated.values[i] <= bound * (1.0 + 1e-12) + 1e-12


def test_mcshane_extension_should_reproduce_its_samples(samples):
    extension = mcshane_extend(samples)

    values = extension.evaluate(extension.samples.times, extension.samples.points, extension.samples.units)

    np.testing.assert_allclose(values, samples.values, atol=1e-12)


def test_mcshane_extension_should_respect_the_growth_floor(samples):
    extension = mcshane_extend(samples)
    rng = np.random.default_rng(0)
    x = rng.uniform(-1.0, 1.0, (200, 1))
    s = np.where(rng.uniform(size=(200, 1)) > 0.5, 1.0, -1.0)

    values = extension.evaluate(rng.uniform(0.0, 1.0, 200), x, s)

    gamma = extension.samples.gamma
    assert np.all(values >= -gamma * (1.0 + np.abs(x[:, 0])) - 1e-12)
    assert np.all(values <= gamma * (1.0 + np.abs(x[:, 0])) + 1e-12)


def test_homogenized_hamiltonian_should_be_positively_homogeneous(samples):
    hamiltonian = homogenize(mcshane_extend(samples))
    s = np.array([[0.0], [0.5], [-2.0], [3.0]])

    values = hamiltonian.evaluate(0.5, np.array([[0.5]]), s)
    unit = hamiltonian.evaluate(0.5, np.array([[0.5]]), np.array([[1.0], [1.0], [-1.0], [1.0]]))

    assert hamiltonian.metadata.provenance == Provenance.MCSHANE
    assert hamiltonian.metadata.upsilon == pytest.approx(2.0 * hamiltonian.metadata.gamma)
    assert hamiltonian.metadata.covering_radius is not None
    np.testing.assert_allclose(values, [0.0, 0.5, 2.0, 3.0] * unit, atol=1e-12)
    assert hamiltonian(0.5, [0.5], [2.0]) == pytest.approx(1.8)


@pytest.fixture
def planar_hamiltonian():
    rng = np.random.default_rng(4)
    units = rng.normal(size=(80, 2))
    units /= np.linalg.norm(units, axis=1, keepdims=True)
    samples = ENatSamples(
        frame=GameFrame(n=2, t0=0.0, theta0=1.0),
        box=(-1.0, 1.0),
        times=rng.uniform(0.0, 1.0, 80),
        points=rng.uniform(-1.0, 1.0, (80, 2)),
        units=units,
        values=rng.uniform(-1.0, 1.0, 80),
        gamma=0.5,
        lipschitz=0.5,
        modulus=0.5,
    )
    return homogenize(mcshane_extend(samples))


def _draws(count: int, seed: int):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 1.0, count), rng.uniform(-1.0, 1.0, (count, 2)), rng.uniform(-2.0, 2.0, (count, 2)), rng


def test_homogenized_hamiltonian_should_be_homogeneous_at_random_draws(planar_hamiltonian):
    t, x, s, rng = _draws(1000, 1)
    alpha = rng.uniform(0.01, 10.0, 1000)

    scaled = planar_hamiltonian.evaluate(t, x, alpha[:, None] * s)
    values = planar_hamiltonian.evaluate(t, x, s)

    np.testing.assert_allclose(scaled, alpha * values, rtol=1e-10, atol=1e-12)


def test_homogenized_hamiltonian_should_respect_its_growth_bound(planar_hamiltonian):
    t, x, s, _ = _draws(1000, 2)
    gamma = planar_hamiltonian.metadata.gamma

    values = planar_hamiltonian.evaluate(t, x, s)

    bound = 2.0 * gamma * np.linalg.norm(s, axis=1) * (1.0 + np.linalg.norm(x, axis=1))
    assert np.sum(np.abs(values) > bound + 1e-12) == 0


def test_homogenized_hamiltonian_should_be_lipschitz_in_the_costate(planar_hamiltonian):
    t, x, s, rng = _draws(1000, 3)
    other = rng.uniform(-2.0, 2.0, (1000, 2))
    gamma = planar_hamiltonian.metadata.gamma

    jumps = np.abs(planar_hamiltonian.evaluate(t, x, s) - planar_hamiltonian.evaluate(t, x, other))

    bound = 2.0 * gamma * (1.0 + np.linalg.norm(x, axis=1)) * np.linalg.norm(s - other, axis=1)
    assert np.sum(jumps > bound * (1.0 + 1e-12) + 1e-12) == 0


def test_empty_sample_sets_should_extend_to_the_growth_floor():
    empty = ENatSamples(
        frame=FRAME,
        box=(-1.0, 1.0),
        times=np.empty(0),
        points=np.empty((0, 1)),
        units=np.empty((0, 1)),
        values=np.empty(0),
        gamma=0.0,
        lipschitz=0.0,
        modulus=0.0,
    )

    hamiltonian = homogenize(mcshane_extend(empty))

    assert hamiltonian.metadata.upsilon == 0.0
    assert hamiltonian.metadata.covering_radius is None
    assert hamiltonian(0.3, [0.2], [1.0]) == 0.0


def test_build_sample_set_should_normalize_the_partial_hamiltonian(phi1, small_config):
    result = run_checks(phi1, small_config)

    samples = build_sample_set(
        result.partial, result.verdict.condition(ConditionId.E4), phi1.frame, small_config.box
    )

    assert samples.calibrated
    assert len(samples) > 0
    assert samples.zero_gradients == 0
    np.testing.assert_allclose(np.linalg.norm(samples.units, axis=1), 1.0)
    np.testing.assert_allclose(samples.values, -np.max(np.abs(samples.units), axis=1), atol=1e-9)


def test_build_sample_set_should_require_a_passing_growth_report(phi2, small_config):
    result = run_checks(phi2, small_config)
    report = result.verdict.condition(ConditionId.E4)

    with pytest.raises(ConditionNotPassed):
        build_sample_set(result.partial, report, phi2.frame, small_config.box)


def test_build_sample_set_should_reject_an_empty_partial_hamiltonian():
    report = ConditionReport(
        condition=ConditionId.E4,
        status=ConditionStatus.PASS,
        estimates=Estimates(gamma=0.0, lipschitz=0.0, modulus=0.0),
    )

    with pytest.raises(EmptySampleSet):
        build_sample_set(PartialHamiltonian(samples=[]), report, FRAME, (-1.0, 1.0))


def test_dumped_extensions_should_load_back(samples):
    hamiltonian = homogenize(mcshane_extend(samples))
    header = orjson.loads(orjson.dumps(hamiltonian_header(hamiltonian, "hamiltonian.msgpack", "digest")))
    table = hamiltonian_table(hamiltonian)

    loaded = load_hamiltonian(header, table)

    assert header["table"]["rows"] == 4
    rng = np.random.default_rng(1)
    t, x, s = rng.uniform(0, 1, 50), rng.uniform(-1, 1, (50, 1)), rng.normal(size=(50, 1))
    np.testing.assert_allclose(loaded.evaluate(t, x, s), hamiltonian.evaluate(t, x, s))


def test_dumped_closed_forms_should_load_back(max_hamiltonian):
    header = orjson.loads(orjson.dumps(hamiltonian_header(max_hamiltonian, None, None)))

    loaded = load_hamiltonian(header)

    assert hamiltonian_table(max_hamiltonian) is None
    assert loaded.metadata == max_hamiltonian.metadata
    s = np.array([[1.0, -3.0], [0.2, 0.1]])
    np.testing.assert_allclose(loaded.evaluate(0.5, np.zeros(2), s), [-3.0, -0.2])
