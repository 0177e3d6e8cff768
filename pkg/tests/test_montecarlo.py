import math

import numpy as np
import pytest
from scipy import integrate

from weakmeter import (
    AcceptanceTooLow,
    BlockedTransition,
    ClassicalNoise,
    DichotomicObservable,
    GaussianPointer,
    Transition,
    TwoLevelState,
    mean_reading_closed,
    path_amplitudes,
    reading_distribution,
    state_from_ratio,
    strong_weights,
)
from weakmeter.montecarlo import sample_readings, sample_with_noise
from weakmeter.pointer import post_selection_norm

from conftest import random_transition
from mc_oracle import chi_square_pvalue, reading_cdf


def test_oracle_cdf_matches_quadrature(sz):
    t = Transition(state_from_ratio(0.3 + 0.4j), state_from_ratio(-0.8))
    p = GaussianPointer(1.5)
    d = reading_distribution(t, sz, p)
    cum = integrate.cumulative_simpson(d.values, dx=d.grid.step, initial=0.0) / d.norm
    for f in (-2.0, 0.0, 0.7, 3.0):
        k = int(np.argmin(np.abs(d.f - f)))
        assert reading_cdf(d.f[k], t, sz, p) == pytest.approx(cum[k], abs=1e-9)


def test_single_route_narrow_pointer(sz):
    t = Transition(state_from_ratio(0.8 - 0.2j), TwoLevelState(1, 0))
    run = sample_readings(t, sz, GaussianPointer(0.01), 10_000, seed=3)
    assert np.all(np.abs(run.readings - sz.s1) < 0.05)
    assert run.accepted == 10_000 == run.readings.size


def test_symmetric_mean_zero(symmetric, sz):
    run = sample_readings(symmetric, sz, GaussianPointer(3.0), 100_000, seed=4)
    assert abs(run.empirical_mean) < 5 * run.standard_error


def test_reproducible(sz):
    t = Transition(state_from_ratio(0.5j), state_from_ratio(-1.5))
    p = GaussianPointer(2.0)
    a = sample_readings(t, sz, p, 5_000, seed=12)
    b = sample_readings(t, sz, p, 5_000, seed=12)
    assert np.array_equal(a.readings, b.readings) and a.attempted == b.attempted
    c = sample_readings(t, sz, p, 5_000, seed=13)
    assert not np.array_equal(a.readings, c.readings)
    noise = ClassicalNoise("uniform", 4.0)
    assert np.array_equal(
        sample_with_noise(t, sz, p, noise, 2_000, seed=1).readings,
        sample_with_noise(t, sz, p, noise, 2_000, seed=1).readings,
    )


def test_blocked(sz):
    t = Transition(TwoLevelState(1, 0), TwoLevelState(0, 1))
    with pytest.raises(BlockedTransition):
        sample_readings(t, sz, GaussianPointer(1.0), 10, seed=0)


def test_acceptance_too_low(sz):
    # overlap ~ 5e-5, pointer so wide the interference survives: N ~ 2.5e-9
    t = Transition(state_from_ratio(1.0), state_from_ratio(-1.0 + 2e-4))
    p = GaussianPointer(1e5)
    assert 1e-12 < post_selection_norm(t, sz, p) < 1e-7
    with pytest.raises(AcceptanceTooLow):
        sample_readings(t, sz, p, 1000, seed=0)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_histogram_and_acceptance_rate(seed):
    rng = np.random.default_rng(100 + seed)
    obs = DichotomicObservable()
    t = random_transition(rng, 0.3)
    p = GaussianPointer(float(rng.uniform(0.5, 4.0)))
    run = sample_readings(t, obs, p, 200_000, seed=seed)
    assert chi_square_pvalue(run.readings, t, obs, p) > 1e-4
    n = post_selection_norm(t, obs, p)
    assert abs(run.acceptance_rate - n) < 5 * math.sqrt(n * (1 - n) / run.attempted)
    assert abs(run.empirical_mean - mean_reading_closed(t, obs, p)) < 5 * run.standard_error


def test_detects_wrong_density(sz):
    # a sampler that ignored the interference term would fail the same test
    t = Transition(state_from_ratio(1.0), state_from_ratio(-0.5))
    p = GaussianPointer(2.0)
    run = sample_readings(t, sz, p, 200_000, seed=5)
    assert chi_square_pvalue(run.readings, t, sz, p) > 1e-4
    wrong = Transition(state_from_ratio(1.0), state_from_ratio(-0.3))
    assert chi_square_pvalue(run.readings, wrong, sz, p) < 1e-10


def test_tiny_noise_matches_plain_sampling(sz):
    t = Transition(state_from_ratio(0.2 + 1j), state_from_ratio(0.7))
    p = GaussianPointer(1.0)
    noisy = sample_with_noise(t, sz, p, ClassicalNoise("gaussian", 1e-9), 100_000, seed=8)
    plain = sample_readings(t, sz, p, 100_000, seed=8)
    # streams coincide until the first noise draw, i.e. within the first batch
    assert np.max(np.abs(noisy.readings[:1000] - plain.readings[:1000])) < 1e-6
    assert abs(noisy.empirical_mean - plain.empirical_mean) < 5 * math.sqrt(2) * plain.standard_error
    assert chi_square_pvalue(noisy.readings, t, sz, p) > 1e-4


def test_noisy_strong_meter_keeps_strong_mean(aav, sz):
    p = GaussianPointer(0.01)
    run = sample_with_noise(aav, sz, p, ClassicalNoise("gaussian", 20.0), 1_000_000, seed=21)
    strong = strong_weights(path_amplitudes(aav, sz), sz).mean
    assert abs(run.empirical_mean - strong) < 5 * run.standard_error
    assert np.std(run.readings) == pytest.approx(20.0, rel=0.01)


@pytest.mark.slow
def test_aav_wide_pointer_end_to_end(aav, sz):
    p = GaussianPointer(30.0)
    run = sample_readings(aav, sz, p, 1_000_000, seed=30)
    assert abs(run.empirical_mean - mean_reading_closed(aav, sz, p)) < 5 * run.standard_error
    n = post_selection_norm(aav, sz, p)
    assert abs(run.acceptance_rate - n) < 5 * math.sqrt(n * (1 - n) / run.attempted)
