import numpy as np
import pytest

from memkin.devices import (
    MAX_RATE,
    DeviceState,
    aptm_rate,
    rate_off_on,
    rate_on_off,
    resistance,
    switching_rate,
    tau_of_voltage,
)
from memkin.errors import DomainError
from tests.conftest import GAMMA_1V


def test_tau_of_voltage():
    assert tau_of_voltage(1.0, 3e5, 0.05) == pytest.approx(1.0 / GAMMA_1V, rel=1e-6)
    assert tau_of_voltage(0.0, 3e5, 0.05) == pytest.approx(3e5)


def test_tau_of_voltage_rejects_bad_parameters():
    with pytest.raises(DomainError):
        tau_of_voltage(1.0, 0.0, 0.05)
    with pytest.raises(DomainError):
        tau_of_voltage(1.0, 3e5, -0.05)
    with pytest.raises(DomainError, match="finite"):
        tau_of_voltage(np.nan, 3e5, 0.05)


def test_poisson_rates_are_one_sided(switching_model):
    assert rate_off_on(1.0, switching_model) == pytest.approx(GAMMA_1V, rel=1e-6)
    assert rate_on_off(-1.0, switching_model) == pytest.approx(GAMMA_1V, rel=1e-6)
    assert rate_off_on(-1.0, switching_model) == 0.0
    assert rate_on_off(1.0, switching_model) == 0.0
    # zero voltage belongs to the zero-rate branch of both directions
    assert rate_off_on(0.0, switching_model) == 0.0
    assert rate_on_off(0.0, switching_model) == 0.0


def test_rates_keep_the_input_shape(switching_model):
    voltages = np.array([[-1.0, 0.0], [0.5, 1.0]])
    rates = rate_off_on(voltages, switching_model)
    assert rates.shape == (2, 2)
    np.testing.assert_array_equal(rates[0], [0.0, 0.0])
    assert rates[1, 1] == pytest.approx(GAMMA_1V, rel=1e-6)
    assert isinstance(rate_off_on(1.0, switching_model), float)


def test_rates_are_capped(switching_model):
    rate = rate_off_on(1000.0, switching_model)
    assert np.isfinite(rate)
    assert rate == pytest.approx(MAX_RATE)
    tau = tau_of_voltage(1000.0, switching_model.tau0, switching_model.v0)
    assert rate * tau == pytest.approx(1.0)
    # a huge reverse voltage does not overflow the switching time
    assert np.isfinite(tau_of_voltage(-1000.0, switching_model.tau0, switching_model.v0))
    assert rate_on_off(-1000.0, switching_model) == pytest.approx(MAX_RATE)
    assert rate_off_on(-1000.0, switching_model) == 0.0


def test_aptm_rate(aptm_model):
    assert aptm_rate(2.0, aptm_model, DeviceState.OFF) == pytest.approx(1e5)
    assert aptm_rate(0.5, aptm_model, DeviceState.OFF) == 0.0
    assert aptm_rate(-2.0, aptm_model, DeviceState.ON) == pytest.approx(1e5)
    assert aptm_rate(-0.5, aptm_model, DeviceState.ON) == 0.0
    assert aptm_rate(2.0, aptm_model, DeviceState.ON) == 0.0


def test_switching_rate_dispatches_on_kind(switching_model, aptm_model):
    model = switching_model
    assert switching_rate(1.0, model, DeviceState.OFF) == rate_off_on(1.0, model)
    assert switching_rate(-1.0, model, DeviceState.ON) == rate_on_off(-1.0, model)
    assert switching_rate(3.0, aptm_model, DeviceState.OFF) == pytest.approx(2e5)


def test_resistance(switching_model, aptm_model):
    assert resistance(DeviceState.ON, switching_model) == 1e3
    assert resistance(DeviceState.OFF, switching_model) == 1e4
    assert resistance(1, aptm_model) == 1e3
