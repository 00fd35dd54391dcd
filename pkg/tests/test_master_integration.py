import numpy as np
import pytest
import xarray as xr

from memkin.errors import AccuracyError, CapacityError, DomainError
from memkin.master import (
    GeneratorAssembler,
    absorption_density,
    build_generator,
    chain_from_rates,
    closed_form_pm,
    closed_form_solution,
    group_by_on_count,
    integrate_master,
    marginal_resistance,
    mean_switch_time_chain,
    reduce_chain,
    switching_time_pdf,
    total_probability,
    two_series_rates,
    two_series_solution,
)
from memkin.network import DCDrive, ParallelTopology, SeriesTopology, SineDrive


def moderate_topology(kind: str, n: int):
    if kind == "series":
        return SeriesTopology(n=n, drive=DCDrive(v_a=0.5 * n))
    return ParallelTopology(n=n, drive=DCDrive(v_a=0.5))


def test_generator_of_two_series(series2, switching_model):
    generator = build_generator(series2, switching_model)
    q = generator.toarray()
    np.testing.assert_allclose(q.sum(axis=1), 0.0, atol=1e-6 * np.abs(q).max())
    g00, g01 = two_series_rates(switching_model, 2.0)
    assert q[0, 0b01] == pytest.approx(g00)
    assert q[0, 0b10] == pytest.approx(g00)
    assert q[0b01, 0b11] == pytest.approx(g01)
    np.testing.assert_array_equal(q[0b11], 0.0)
    assert generator.exit_rates[0] == pytest.approx(2 * g00)


def test_generator_capacity(switching_model):
    with pytest.raises(CapacityError, match="cap"):
        build_generator(SeriesTopology(n=5, drive=DCDrive(v_a=5.0)), switching_model, max_devices=4)


def test_generator_rate_ceiling(series2, switching_model):
    q = build_generator(series2, switching_model, rate_ceiling=1e6).toarray()
    assert q[0b01, 0b11] == pytest.approx(1e6)
    assert q[0, 0b01] == pytest.approx(two_series_rates(switching_model, 2.0)[0])


@pytest.mark.parametrize("kind", ["series", "parallel"])
@pytest.mark.parametrize("n", [1, 2, 3, 5, 10])
def test_closed_form_matches_full_integration(kind, n, moderate_model):
    topology = moderate_topology(kind, n)
    chain = reduce_chain(topology, moderate_model)
    t_end = 5.0 * mean_switch_time_chain(chain)
    solution = integrate_master(topology, t_end=t_end, steps=200, models=moderate_model)
    levels = group_by_on_count(solution)
    times = solution.time.values
    for m in range(n + 1):
        expected = closed_form_pm(chain, m, times)
        np.testing.assert_allclose(levels.probability.sel(level=m).values, expected, atol=1e-7)


def test_reduced_chain_integration_matches_closed_form(moderate_model):
    chain = reduce_chain(moderate_topology("series", 4), moderate_model)
    t_end = 5.0 * mean_switch_time_chain(chain)
    solution = integrate_master(chain, t_end=t_end, steps=100)
    assert solution.attrs["representation"] == "reduced"
    exact = closed_form_solution(chain, solution.time.values)
    np.testing.assert_allclose(solution.probability.values, exact.probability.values, atol=1e-7)
    np.testing.assert_allclose(total_probability(solution).values, 1.0, atol=1e-8)


def test_degenerate_chain_integrates():
    chain = chain_from_rates([1.0, 2.0])  # coinciding exit rates
    solution = integrate_master(chain, t_end=20.0, steps=50)
    p_all_on = solution.probability.sel(level=2).values
    # T = E1 + E2 with both rates 2 is Gamma(2, 2): P(T <= t) = 1 - (1 + 2t) exp(-2t)
    t = solution.time.values
    np.testing.assert_allclose(p_all_on, 1.0 - (1.0 + 2.0 * t) * np.exp(-2.0 * t), atol=1e-7)


def test_marginal_resistance_of_two_series(moderate_model):
    topology = SeriesTopology(n=2, drive=DCDrive(v_a=1.0))
    g00, g01 = two_series_rates(moderate_model, 1.0)
    solution = integrate_master(topology, t_end=0.05, steps=100, models=moderate_model)
    p00, p01, p11 = two_series_solution(g00, g01, solution.time.values)
    expected = moderate_model.r_off * (p00 + p01) + moderate_model.r_on * (p01 + p11)
    resistance = marginal_resistance(solution, 0, [moderate_model] * 2)
    assert resistance.name == "avg_resistance_0"
    assert resistance.values[0] == pytest.approx(moderate_model.r_off)
    np.testing.assert_allclose(resistance.values, expected, rtol=1e-7)


def test_marginal_resistance_of_reduced_solution(moderate_model):
    topology = moderate_topology("parallel", 3)
    chain = reduce_chain(topology, moderate_model)
    times = np.linspace(0.0, 0.1, 21)
    reduced = closed_form_solution(chain, times)
    full = integrate_master(topology, t_end=0.1, steps=20, models=moderate_model)
    np.testing.assert_allclose(
        marginal_resistance(reduced, 2, moderate_model).values,
        marginal_resistance(full, 2, moderate_model).values,
        rtol=1e-7,
    )


def test_absorption_density(moderate_model):
    topology = moderate_topology("series", 3)
    chain = reduce_chain(topology, moderate_model)
    solution = integrate_master(topology, t_end=0.1, steps=100, models=moderate_model)
    from_generator = absorption_density(build_generator(topology, moderate_model), solution)
    from_chain = absorption_density(chain, closed_form_solution(chain, solution.time.values))
    expected = switching_time_pdf(chain, solution.time.values)
    scale = expected.max()
    np.testing.assert_allclose(from_chain.values, expected, atol=1e-9 * scale)
    np.testing.assert_allclose(from_generator.values, expected, atol=1e-6 * scale)
    assert from_generator.name == "density"


def test_time_varying_drive(moderate_model):
    topology = ParallelTopology(n=1, drive=SineDrive(amplitude=1.0, frequency=10.0))
    solution = integrate_master(topology, t_end=0.2, steps=2000, models=moderate_model)
    np.testing.assert_allclose(total_probability(solution).values, 1.0, atol=1e-8)
    density = absorption_density(GeneratorAssembler(topology, moderate_model), solution)
    p_on = solution.probability.sel(state=1).values
    t = solution.time.values
    slope = np.gradient(p_on, t)
    scale = np.abs(density.values).max()
    # the ON probability falls while the drive is negative
    assert density.values.min() < 0
    # rates jump where the drive changes sign
    smooth = np.abs(np.sin(2 * np.pi * 10.0 * t)) > 0.05
    smooth[[0, -1]] = False
    np.testing.assert_allclose(density.values[smooth], slope[smooth], atol=1e-2 * scale)


def test_integration_metadata(series2, moderate_model):
    solution = integrate_master(series2, t_end=0.01, steps=10, models=moderate_model)
    assert solution.attrs["representation"] == "full"
    assert solution.attrs["n_devices"] == 2
    assert "method=RK45" in solution.attrs["solver"]
    assert isinstance(solution, xr.Dataset)


def test_evaluation_budget(series2, moderate_model):
    with pytest.raises(AccuracyError, match="right-hand-side evaluations"):
        integrate_master(
            series2, t_end=1.0, steps=10, models=moderate_model, max_rhs_evaluations=10
        )


def test_initial_distribution(moderate_model):
    topology = moderate_topology("series", 2)
    solution = integrate_master(
        topology, p_init=[0.0, 0.5, 0.5, 0.0], t_end=0.01, steps=5, models=moderate_model
    )
    assert solution.probability.sel(state=0).values.max() == 0.0
    with pytest.raises(DomainError):
        integrate_master(topology, p_init=[0.5, 0.5, 0.5, 0.0], t_end=0.01, models=moderate_model)
    with pytest.raises(DomainError):
        integrate_master(topology, p_init=7, t_end=0.01, models=moderate_model)


def test_full_state_capacity(moderate_model):
    with pytest.raises(CapacityError):
        integrate_master(
            moderate_topology("parallel", 6), t_end=0.01, models=moderate_model, max_devices=5
        )
