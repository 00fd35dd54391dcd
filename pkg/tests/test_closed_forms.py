import numpy as np
import pytest

from memkin.devices import rate_off_on
from memkin.errors import DegeneracyError, DomainError
from memkin.master import (
    harmonic_number,
    memristor1_stats,
    parallel_all_on,
    parallel_mean_time,
    single_device_solution,
    two_series_moments,
    two_series_rates,
    two_series_solution,
)
from memkin.stats import quadrature_moments
from tests.conftest import GAMMA_1V, PARALLEL2_MEAN, PARALLEL10_MEAN, SERIES2_MEAN

G00, G01 = 100.0, 500.0


def test_two_series_rates(switching_model):
    g00, g01 = two_series_rates(switching_model, 2.0)
    assert g00 == pytest.approx(GAMMA_1V, rel=1e-6)
    assert g01 == pytest.approx(rate_off_on(20.0 / 11.0, switching_model))
    assert g01 > 1e10


def test_two_series_solution_conserves_probability():
    t = np.linspace(0.0, 0.05, 101)
    p00, p01, p11 = two_series_solution(G00, G01, t)
    np.testing.assert_allclose(p00 + 2 * p01 + p11, 1.0, atol=1e-12)
    assert (p00[0], p01[0], p11[0]) == (1.0, 0.0, 0.0)
    assert p11[-1] > 0.99


def test_two_series_solution_is_singular_at_the_double_rate():
    with pytest.raises(DegeneracyError):
        two_series_solution(100.0, 200.0, 0.1)
    with pytest.raises(DomainError):
        two_series_solution(-1.0, 200.0, 0.1)


def test_two_series_mean(switching_model):
    mean, _ = two_series_moments(*two_series_rates(switching_model, 2.0))
    assert mean == pytest.approx(SERIES2_MEAN, rel=2e-3)


def test_two_series_variance_by_quadrature():
    mean, variance = two_series_moments(G00, G01)

    def density(t):
        _, p01, _ = two_series_solution(G00, G01, t)
        return 2.0 * G01 * float(p01)

    normalization, quadrature_mean, quadrature_variance = quadrature_moments(density, 2.0)
    assert normalization == pytest.approx(1.0, rel=1e-6)
    assert quadrature_mean == pytest.approx(mean, rel=1e-6)
    assert quadrature_variance == pytest.approx(variance, rel=1e-6)


def test_memristor1_stats():
    phi1, mean = memristor1_stats(G00, G01, 0.0)
    # at t = 0 device 1 leaves OFF at the both-OFF rate
    assert phi1 == pytest.approx(G00)
    assert mean == pytest.approx(1.0 / (2 * G00) + 1.0 / (2 * G01))

    normalization, quadrature_mean, _ = quadrature_moments(
        lambda t: float(memristor1_stats(G00, G01, t)[0]), 2.0
    )
    assert normalization == pytest.approx(1.0, rel=1e-6)
    assert quadrature_mean == pytest.approx(mean, rel=1e-6)


def test_harmonic_number():
    assert harmonic_number(0) == 0.0
    assert harmonic_number(1) == 1.0
    assert harmonic_number(10) == pytest.approx(7381 / 2520)


def test_parallel_means():
    assert parallel_mean_time(2, GAMMA_1V) == pytest.approx(1.5 / GAMMA_1V)
    assert parallel_mean_time(2, GAMMA_1V) == pytest.approx(PARALLEL2_MEAN, rel=2e-3)
    assert parallel_mean_time(10, GAMMA_1V) == pytest.approx(PARALLEL10_MEAN, rel=2e-3)
    # H_N approaches ln N plus the Euler-Mascheroni constant
    expected = np.log(100000) + np.euler_gamma
    assert parallel_mean_time(100000, 1.0) == pytest.approx(expected, abs=1e-5)


def test_parallel_all_on():
    t = np.linspace(0.0, 3e-3, 20)
    off, on = single_device_solution(GAMMA_1V, t)
    np.testing.assert_allclose(off + on, 1.0)
    np.testing.assert_allclose(parallel_all_on(1, GAMMA_1V, t), on)
    np.testing.assert_allclose(parallel_all_on(10, GAMMA_1V, t), on**10)
    assert parallel_all_on(10, GAMMA_1V, 0.0) == 0.0


def test_parallel_rejects_bad_input():
    with pytest.raises(DomainError):
        parallel_all_on(0, 1.0, 1.0)
    with pytest.raises(DomainError):
        parallel_mean_time(3, 0.0)
    with pytest.raises(DomainError):
        parallel_all_on(2, 1.0, -1.0)
