import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from memkin.errors import DomainError, SchemeError, StepSizeError
from memkin.master import mean_switch_time_chain, reduce_chain, switching_time_cdf
from memkin.montecarlo import EnsembleConfig, ParamMode, Scheme, run_ensemble
from memkin.network import SeriesTopology, SineDrive
from tests.conftest import (
    PARALLEL10_MEAN,
    PARALLEL10_SPREAD_MEAN,
    SERIES2_MEAN,
    SERIES10_MEAN,
    SERIES10_SPREAD_MEAN,
)


@pytest.fixture(autouse=True)
def no_thread_override(monkeypatch):
    monkeypatch.delenv("MEMKIN_THREADS", raising=False)


def _within_standard_errors(ensemble, expected, k=3.0):
    return abs(ensemble.mean - expected) <= k * ensemble.standard_error


def _follows_chain_distribution(ensemble, chain) -> bool:
    def cdf(t):
        return np.clip(switching_time_cdf(chain, np.asarray(t, dtype=float)), 0.0, 1.0)

    return stats.kstest(ensemble.network_times(), cdf).pvalue > 1e-3


def test_same_seed_same_ensemble(series2, switching_model):
    config = EnsembleConfig(topology=series2, models=(switching_model,), seed=11, threads=1)
    first = run_ensemble(config, 600)
    second = run_ensemble(config.model_copy(update={"threads": 3}), 600)
    np.testing.assert_array_equal(first.network_times(), second.network_times())
    np.testing.assert_array_equal(first.device_times(), second.device_times())

    other = run_ensemble(config.model_copy(update={"seed": 12}), 600)
    assert not np.array_equal(first.network_times(), other.network_times())


def test_ensemble_dataframe(series2, switching_model):
    ensemble = run_ensemble(EnsembleConfig(topology=series2, models=(switching_model,)), 50)
    frame = ensemble.to_dataframe()
    assert list(frame.columns) == ["trial", "device_0", "device_1", "network_time"]
    assert len(frame) == 50
    assert ensemble.n_censored == 0
    np.testing.assert_array_equal(frame["network_time"].values, ensemble.network_times())


def test_series2_event_driven(series2, switching_model):
    ensemble = run_ensemble(EnsembleConfig(topology=series2, models=(switching_model,)), 20000)
    exact = mean_switch_time_chain(reduce_chain(series2, switching_model))
    assert exact == pytest.approx(SERIES2_MEAN, rel=2e-3)
    assert _within_standard_errors(ensemble, exact)


@pytest.mark.slow
def test_parallel10_event_driven(parallel10, switching_model):
    ensemble = run_ensemble(EnsembleConfig(topology=parallel10, models=(switching_model,)), 10000)
    chain = reduce_chain(parallel10, switching_model)
    exact = mean_switch_time_chain(chain)
    assert exact == pytest.approx(PARALLEL10_MEAN, rel=2e-3)
    assert _within_standard_errors(ensemble, exact)
    assert _follows_chain_distribution(ensemble, chain)


@pytest.mark.slow
def test_series10_event_driven(series10, switching_model):
    ensemble = run_ensemble(EnsembleConfig(topology=series10, models=(switching_model,)), 10000)
    chain = reduce_chain(series10, switching_model)
    exact = mean_switch_time_chain(chain)
    assert exact == pytest.approx(SERIES10_MEAN, rel=2e-3)
    assert _within_standard_errors(ensemble, exact)
    assert _follows_chain_distribution(ensemble, chain)


@pytest.mark.slow
def test_series10_fixed_step_default_step(series10, switching_model):
    config = EnsembleConfig(topology=series10, models=(switching_model,), scheme=Scheme.FIXED_STEP)
    ensemble = run_ensemble(config, 10000)
    assert ensemble.dt == pytest.approx(7.7e-8, rel=0.02)
    assert ensemble.n_censored == 0
    # a finite step can only delay switching
    assert SERIES10_MEAN - 3 * ensemble.standard_error <= ensemble.mean <= 78e-6


@pytest.mark.slow
@pytest.mark.parametrize(
    "topology_fixture, expected",
    [("parallel10", PARALLEL10_SPREAD_MEAN), ("series10", SERIES10_SPREAD_MEAN)],
)
def test_spread_ensembles(request, switching_model, device_spread, topology_fixture, expected):
    topology = request.getfixturevalue(topology_fixture)
    config = EnsembleConfig(topology=topology, models=(switching_model,), spread=device_spread)
    ensemble = run_ensemble(config, 10000)
    assert ensemble.n_censored == 0
    assert ensemble.mean == pytest.approx(expected, rel=0.15)


def test_redrawn_parameters_differ_between_trials(parallel2, switching_model, device_spread):
    config = EnsembleConfig(topology=parallel2, models=(switching_model,), spread=device_spread)
    ensemble = run_ensemble(config, 20)
    assert ensemble.param_mode == ParamMode.REDRAWN
    tau0s = {model.tau0 for models in ensemble.models for model in models}
    assert len(tau0s) == 40
    for model in ensemble.models[0]:
        assert 2e5 <= model.tau0 <= 4e5
        assert 0.04 <= model.v0 <= 0.06
        assert model.tau1 == switching_model.tau1


def test_fixed_once_parameters_are_shared(parallel2, switching_model, device_spread):
    config = EnsembleConfig(
        topology=parallel2,
        models=(switching_model,),
        spread=device_spread,
        param_mode=ParamMode.FIXED_ONCE,
    )
    ensemble = run_ensemble(config, 20)
    assert all(models == ensemble.models[0] for models in ensemble.models)
    assert ensemble.models[0][0] != ensemble.models[0][1]
    assert ensemble.models[0][0] != switching_model


def test_spread_ignored_in_identical_mode(parallel2, switching_model, device_spread):
    config = EnsembleConfig(
        topology=parallel2,
        models=(switching_model,),
        spread=device_spread,
        param_mode=ParamMode.IDENTICAL,
    )
    ensemble = run_ensemble(config, 5)
    assert all(model == switching_model for models in ensemble.models for model in models)


def test_parallel_devices_are_independent(parallel2, switching_model):
    ensemble = run_ensemble(EnsembleConfig(topology=parallel2, models=(switching_model,)), 10000)
    times = ensemble.device_times()
    products = (times[:, 0] - times[:, 0].mean()) * (times[:, 1] - times[:, 1].mean())
    standard_error = products.std(ddof=1) / np.sqrt(products.size)
    assert abs(products.mean()) <= 3 * standard_error


def test_event_driven_rejects_sine(switching_model):
    topology = SeriesTopology(n=2, drive=SineDrive(amplitude=1.5, frequency=1e3))
    with pytest.raises(SchemeError):
        run_ensemble(EnsembleConfig(topology=topology, models=(switching_model,)), 10)


def test_explicit_step_too_coarse(series2, switching_model):
    config = EnsembleConfig(
        topology=series2, models=(switching_model,), scheme=Scheme.FIXED_STEP, dt=1.0, horizon=10.0
    )
    with pytest.raises(StepSizeError):
        run_ensemble(config, 4)


def test_config_validation(series2, switching_model, aptm_model, device_spread):
    with pytest.raises(DomainError):
        run_ensemble(EnsembleConfig(topology=series2, models=(switching_model,)), 0)
    with pytest.raises(ValidationError):
        EnsembleConfig(topology=series2)
    with pytest.raises(ValidationError):
        EnsembleConfig(topology=series2, models=(switching_model,) * 3)
    with pytest.raises(ValidationError):
        EnsembleConfig(topology=series2, models=(aptm_model,), spread=device_spread)
    with pytest.raises(ValidationError):
        EnsembleConfig(topology=series2, models=(switching_model,), seed=-1)
