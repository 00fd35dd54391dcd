"""
rates.py
--------
Voltage-dependent switching rates of a single device.

Functions:
- `tau_of_voltage`: characteristic switching time tau0 * exp(-V / V0).
- `rate_off_on`, `rate_on_off`: Poisson-exponential rates, zero for the wrong sign of V.
- `aptm_rate`: threshold model with power-law overdrive.
- `switching_rate`: dispatch on the model kind and the device state.
- `resistance`: resistance level of a device state.

Every function accepts a scalar or a numpy array of voltages and returns the
same shape. V = 0 belongs to the zero-rate branch. Rates are capped at
MAX_RATE so they stay finite for any finite drive; the switching time is
floored at 1 / MAX_RATE so that rate * tau = 1 is preserved.

An extreme voltage of the switching sign therefore gives MAX_RATE, never 0
and never inf: the device flips at the next fixed step (with saturation) and
after a vanishing holding time in the event-driven scheme.
"""

from typing import Union

import numpy as np

from memkin.errors import DomainError

from .types import APTMModel, DeviceState, PoissonExpModel

MAX_RATE = 1e300
_LOG_MAX_RATE = float(np.log(MAX_RATE))
_LOG_MAX_TAU = 709.0

ArrayLike = Union[float, np.ndarray]


def _finite_voltage(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Voltage must be finite")
    return arr


def _same_shape(result: np.ndarray, v) -> ArrayLike:
    return float(result) if np.ndim(v) == 0 else result


def tau_of_voltage(v: ArrayLike, tau0: float, v0: float) -> ArrayLike:
    """
    Switching time at voltage V, tau0 * exp(-V / V0).

    Parameters:
    - v (float | np.ndarray): voltage across the device, volts
    - tau0 (float): switching time at zero voltage, seconds
    - v0 (float): voltage scale, volts

    Returns:
    - float | np.ndarray: switching time in seconds, strictly positive

    Example:
    >> tau_of_voltage(1.0, 3e5, 0.05)
    0.000618...
    """
    if not (np.isfinite(tau0) and np.isfinite(v0)) or tau0 <= 0 or v0 <= 0:
        raise DomainError(f"tau0 and v0 must be positive and finite, got {tau0}, {v0}")
    arr = _finite_voltage(v)
    log_tau = np.clip(np.log(tau0) - arr / v0, -_LOG_MAX_RATE, _LOG_MAX_TAU)
    return _same_shape(np.exp(log_tau), v)


def rate_off_on(v: ArrayLike, model: PoissonExpModel) -> ArrayLike:
    """OFF to ON rate 1 / tau(V) for V > 0, else 0; at most MAX_RATE for extreme V."""
    arr = _finite_voltage(v)
    tau = tau_of_voltage(arr, model.tau0, model.v0)
    return _same_shape(np.where(arr > 0, 1.0 / tau, 0.0), v)


def rate_on_off(v: ArrayLike, model: PoissonExpModel) -> ArrayLike:
    """ON to OFF rate 1 / tau(|V|) with tau1, V1 for V < 0, else 0; capped like rate_off_on."""
    arr = _finite_voltage(v)
    tau = tau_of_voltage(np.abs(arr), model.tau1, model.v1)
    return _same_shape(np.where(arr < 0, 1.0 / tau, 0.0), v)


def aptm_rate(v: ArrayLike, model: APTMModel, from_state: DeviceState) -> ArrayLike:
    """
    Threshold rate law: k_on (V/v_on - 1)^alpha_on above v_on for an OFF device,
    k_off (V/v_off - 1)^alpha_off below v_off for an ON device, zero otherwise.
    """
    arr = _finite_voltage(v)
    if DeviceState(from_state) is DeviceState.OFF:
        overdrive = np.where(arr > model.v_on, arr / model.v_on - 1.0, 0.0)
        prefactor, alpha = model.k_on, model.alpha_on
    else:
        overdrive = np.where(arr < model.v_off, arr / model.v_off - 1.0, 0.0)
        prefactor, alpha = model.k_off, model.alpha_off
    with np.errstate(over="ignore"):
        rate = np.minimum(prefactor * overdrive**alpha, MAX_RATE)
    return _same_shape(rate, v)


def _poisson_rate(v: ArrayLike, model: PoissonExpModel, from_state: DeviceState) -> ArrayLike:
    if DeviceState(from_state) is DeviceState.OFF:
        return rate_off_on(v, model)
    return rate_on_off(v, model)


RATE_LAWS = {
    "poisson": _poisson_rate,
    "aptm": aptm_rate,
}


def switching_rate(v: ArrayLike, model, from_state: DeviceState) -> ArrayLike:
    """Rate of leaving `from_state` at voltage V under the model's own rate law."""
    return RATE_LAWS[model.kind](v, model, from_state)


def resistance(state: DeviceState, model) -> float:
    return model.r_on if DeviceState(state) is DeviceState.ON else model.r_off
