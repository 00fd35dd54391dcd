"""
two_series.py
-------------
Closed forms for two identical devices in series, and for a single device.

With both devices OFF each one switches at rate g00. Once one is ON the other
sees most of the drive and switches at rate g01. Starting from 00:

    p00(t) = exp(-2 g00 t)
    p01(t) = g00 (exp(-2 g00 t) - exp(-g01 t)) / (g01 - 2 g00)
    p11(t) = 1 - p00(t) - 2 p01(t)
"""

from typing import Tuple

import numpy as np

from memkin.devices import DeviceState, switching_rate
from memkin.errors import DegeneracyError, DomainError


def _rates(g00: float, g01: float) -> Tuple[float, float]:
    g00, g01 = float(g00), float(g01)
    if not (np.isfinite(g00) and np.isfinite(g01)) or g00 <= 0 or g01 <= 0:
        raise DomainError("two-series rates must be positive and finite")
    return g00, g01


def _times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("times must be finite and non-negative")
    return t


def two_series_rates(model, v_a: float) -> Tuple[float, float]:
    """
    g00 at half the drive, g01 for the remaining OFF device behind one ON device.

    Example:
    >> two_series_rates(PoissonExpModel(tau0=3e5, v0=0.05, tau1=3e5, v1=0.05, r_on=1e3, r_off=1e4), 2.0)
    (1617.2..., 2.0...e+10)
    """
    g00 = switching_rate(v_a / 2.0, model, DeviceState.OFF)
    g01 = switching_rate(v_a * model.r_off / (model.r_on + model.r_off), model, DeviceState.OFF)
    return float(g00), float(g01)


def two_series_solution(g00: float, g01: float, t):
    """
    Probabilities of 00, of each single one-ON state, and of 11 at time(s) t.

    Parameters:
    - g00 (float): per-device rate with both devices OFF
    - g01 (float): rate of the remaining OFF device once the other is ON
    - t (float | np.ndarray): time(s) in seconds

    Returns:
    - tuple: (p00, p01, p11), each shaped like t; p10 equals p01

    Raises:
    - DegeneracyError: if g01 == 2 * g00
    """
    g00, g01 = _rates(g00, g01)
    if g01 == 2.0 * g00:
        raise DegeneracyError("g01 equals 2 * g00; the two-series closed form is singular")
    t = _times(t)
    p00 = np.exp(-2.0 * g00 * t)
    p01 = g00 * (np.exp(-2.0 * g00 * t) - np.exp(-g01 * t)) / (g01 - 2.0 * g00)
    p11 = 1.0 - p00 - 2.0 * p01
    return p00, p01, p11


def two_series_moments(g00: float, g01: float) -> Tuple[float, float]:
    """Mean and variance of the all-ON time: 1/(2 g00) + 1/g01 and 1/(2 g00)^2 + 1/g01^2."""
    g00, g01 = _rates(g00, g01)
    return 1.0 / (2.0 * g00) + 1.0 / g01, 1.0 / (2.0 * g00) ** 2 + 1.0 / g01**2


def memristor1_stats(g00: float, g01: float, t):
    """
    Switch-time density of device 1 and its mean switch time.

    Device 1 leaves OFF from 00 at rate g00 and, once device 2 is ON, at rate
    g01, so Phi1 = g00 p00 + g01 p10 with p10 = p01 by symmetry. The mean is
    1/(2 g00) + 1/(2 g01): with probability one half device 1 flips first,
    otherwise it waits for the other device.
    """
    p00, p01, _ = two_series_solution(g00, g01, t)
    return g00 * p00 + g01 * p01, 1.0 / (2.0 * g00) + 1.0 / (2.0 * g01)
