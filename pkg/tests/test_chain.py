import numpy as np
import pytest

from memkin.devices import rate_off_on
from memkin.errors import DegeneracyError, DomainError, InfiniteTimeError, NotReducibleError
from memkin.master import (
    chain_from_rates,
    chain_with_ceiling,
    closed_form_coefficients,
    closed_form_pm,
    mean_switch_time_chain,
    partial_fraction_residual,
    reduce_chain,
    switching_time_cdf,
    switching_time_pdf,
    variance_switch_time_chain,
)
from memkin.network import DCDrive, GeneralTopology, SeriesTopology, SineDrive, series_netlist
from memkin.stats import quadrature_moments
from tests.conftest import GAMMA_1V, PARALLEL2_MEAN, PARALLEL10_MEAN, SERIES2_MEAN, SERIES10_MEAN


def well_separated_chain(rng, n):
    """Chain whose exit rates are distinct powers of two, shuffled and scaled."""
    a = rng.permutation(2.0 ** np.arange(n)) * rng.uniform(0.5, 2.0)
    return chain_from_rates(a / (n - np.arange(n)))


def test_chain_rates():
    chain = chain_from_rates([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(chain.a, [3.0, 4.0, 3.0, 0.0])
    np.testing.assert_array_equal(chain.b, [0.0, 1.0, 4.0, 9.0])
    assert not chain.is_constant
    assert chain_from_rates([5.0, 5.0]).is_constant


def test_chain_from_rates_rejects_bad_rates():
    with pytest.raises(DomainError):
        chain_from_rates([])
    with pytest.raises(DomainError):
        chain_from_rates([1.0, -1.0])


def test_reduce_series_two(series2, switching_model):
    chain = reduce_chain(series2, switching_model)
    assert chain.gamma[0] == pytest.approx(GAMMA_1V, rel=1e-6)
    assert chain.gamma[1] == pytest.approx(rate_off_on(2.0 * 10.0 / 11.0, switching_model))
    assert mean_switch_time_chain(chain) == pytest.approx(SERIES2_MEAN, rel=2e-3)


def test_reduce_parallel(parallel2, parallel10, switching_model):
    assert mean_switch_time_chain(reduce_chain(parallel2, switching_model)) == pytest.approx(
        PARALLEL2_MEAN, rel=2e-3
    )
    assert mean_switch_time_chain(reduce_chain(parallel10, switching_model)) == pytest.approx(
        PARALLEL10_MEAN, rel=2e-3
    )


def test_reduce_series_ten(series10, switching_model):
    chain = reduce_chain(series10, switching_model)
    assert mean_switch_time_chain(chain) == pytest.approx(SERIES10_MEAN, rel=2e-3)
    # rates climb steeply as devices turn on
    assert np.all(np.diff(chain.gamma) > 0)
    assert chain.gamma[-1] > 1e30


def test_reduce_chain_rejects_other_networks(switching_model, device_spread):
    with pytest.raises(NotReducibleError):
        sine = SineDrive(amplitude=1.0, frequency=1e3)
        reduce_chain(SeriesTopology(n=2, drive=sine), switching_model)
    general = GeneralTopology(netlist=series_netlist(2, switching_model, DCDrive(v_a=2.0)))
    with pytest.raises(NotReducibleError):
        reduce_chain(general, None)
    other = switching_model.model_copy(update={"tau0": 2e5})
    with pytest.raises(NotReducibleError):
        reduce_chain(SeriesTopology(n=2, drive=DCDrive(v_a=2.0)), [switching_model, other])


def test_closed_form_initial_condition():
    rng = np.random.default_rng(5)
    for _ in range(20):
        chain = well_separated_chain(rng, int(rng.integers(1, 9)))
        assert closed_form_pm(chain, 0, 0.0) == pytest.approx(1.0)
        for m in range(1, chain.n + 1):
            assert abs(closed_form_pm(chain, m, 0.0)) <= 1e-9


def test_closed_form_single_device():
    chain = chain_from_rates([3.0])
    t = np.linspace(0.0, 2.0, 11)
    np.testing.assert_allclose(closed_form_pm(chain, 1, t), 1.0 - np.exp(-3.0 * t), atol=1e-12)


def test_closed_form_matches_parallel_product(switching_model, parallel10):
    chain = reduce_chain(parallel10, switching_model)
    t = np.linspace(0.0, 5e-3, 50)
    np.testing.assert_allclose(
        closed_form_pm(chain, 10, t),
        (1.0 - np.exp(-chain.gamma[0] * t)) ** 10,
        rtol=1e-9,
        atol=1e-11,
    )
    np.testing.assert_allclose(
        switching_time_cdf(chain, t), closed_form_pm(chain, 10, t), atol=1e-11
    )


def test_coefficients_agree_with_closed_form():
    rng = np.random.default_rng(9)
    chain = well_separated_chain(rng, 6)
    coefficients = closed_form_coefficients(chain)
    t = np.linspace(0.0, 1.0, 25)
    for m in range(chain.n + 1):
        np.testing.assert_allclose(
            coefficients.evaluate(m, t), closed_form_pm(chain, m, t), rtol=1e-8, atol=1e-12
        )
    # the coefficients of every level m >= 1 cancel at t = 0
    sums = coefficients.C.sum(axis=1)
    assert sums[0] == pytest.approx(1.0)
    np.testing.assert_allclose(sums[1:], 0.0, atol=1e-9)


def test_diagonal_coefficient_product_form():
    chain = chain_from_rates([1.0, 3.0, 2.0])
    a, b = chain.a, chain.b
    C = closed_form_coefficients(chain).C
    for m in range(1, chain.n + 1):
        expected = np.prod([b[i + 1] / (a[i] - a[m]) for i in range(m)])
        assert C[m, m] == pytest.approx(expected)


def test_partial_fraction_identity():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        size = int(rng.integers(2, 10))
        a = rng.uniform(0.1, 100.0, size=size)
        assert partial_fraction_residual(a) <= 1e-9


def test_degenerate_chain_is_rejected():
    chain = chain_from_rates([1.0, 2.0])  # a_0 = a_1 = 2
    with pytest.raises(DegeneracyError, match="integrate"):
        closed_form_pm(chain, 1, 0.5)
    with pytest.raises(DegeneracyError):
        closed_form_coefficients(chain)


def test_unreachable_level_and_infinite_mean():
    chain = chain_from_rates([1.0, 0.0])
    assert closed_form_pm(chain, 2, 1.0) == 0.0
    with pytest.raises(InfiniteTimeError):
        mean_switch_time_chain(chain)
    with pytest.raises(InfiniteTimeError):
        variance_switch_time_chain(chain)


def test_negative_times_are_rejected():
    with pytest.raises(DomainError):
        closed_form_pm(chain_from_rates([1.0]), 1, -1.0)


def test_rate_ceiling():
    chain = chain_with_ceiling(chain_from_rates([1.0, 1e50]), 1e6)
    np.testing.assert_array_equal(chain.gamma, [1.0, 1e6])


def test_mean_matches_density_quadrature():
    rng = np.random.default_rng(17)
    for _ in range(10):
        chain = well_separated_chain(rng, int(rng.integers(1, 6)))
        mean = mean_switch_time_chain(chain)
        normalization, quadrature_mean, quadrature_variance = quadrature_moments(
            lambda t: switching_time_pdf(chain, t), 60.0 * mean
        )
        assert normalization == pytest.approx(1.0, rel=1e-6)
        assert quadrature_mean == pytest.approx(mean, rel=1e-6)
        assert quadrature_variance == pytest.approx(variance_switch_time_chain(chain), rel=1e-5)


def test_density_quadrature_recovers_network_means(switching_model, parallel10, series10):
    parallel = reduce_chain(parallel10, switching_model)
    _, mean, _ = quadrature_moments(lambda t: switching_time_pdf(parallel, t), 50 * PARALLEL10_MEAN)
    assert mean == pytest.approx(PARALLEL10_MEAN, rel=2e-3)

    series = reduce_chain(series10, switching_model)
    _, mean, _ = quadrature_moments(
        lambda t: switching_time_pdf(series, t), 50 * SERIES10_MEAN, points=[1e-8, 1e-7, 1e-6, 1e-5]
    )
    assert mean == pytest.approx(mean_switch_time_chain(series), rel=1e-6)
