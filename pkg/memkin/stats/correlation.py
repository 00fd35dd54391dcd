"""
correlation.py
--------------
Resistance correlation functions.

For two identical devices in series the correlation of their resistances has
a closed form in the occupation probabilities. For any ensemble, the
one-time correlation is estimated from the switch times with the step
reconstruction R_i(t) = r_off + (r_on - r_off) * H(t - t_i), which makes the
normalized correlation the covariance of the ON indicators.

Functions:
- `corr_two_series`, `autocorr_two_series`, `two_series_correlation_grid`
- `empirical_corr`, `pair_averaged_corr`, `device_pairs`
"""

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from memkin.errors import DomainError
from memkin.master import two_series_solution


@dataclass(frozen=True)
class CorrelationGrid:
    t: np.ndarray
    s: np.ndarray
    values: np.ndarray  # K(t, s) in ohm^2, shape (len(t), len(s))
    delta_r: float  # r_off - r_on

    @property
    def normalized(self) -> np.ndarray:
        return self.values / self.delta_r**2


@dataclass(frozen=True)
class CorrelationEstimate:
    t: np.ndarray
    values: np.ndarray  # normalized correlation
    standard_error: np.ndarray


def _delta_r(model) -> float:
    return 1.0 if model is None else model.r_off - model.r_on


def _check_times(t, s):
    if np.any(np.asarray(t) < 0) or np.any(np.asarray(s) < 0):
        raise DomainError("correlation times must be non-negative")


def _off_probability(g00: float, g01: float, t):
    p00, p01, _ = two_series_solution(g00, g01, t)
    return p00 + p01, p01


def corr_two_series(g00: float, g01: float, t, s, model=None):
    """
    Cross-correlation of the two device resistances at times t and t + s.

    K12 / dR^2 = (1 - p0(t)) p0(t + s) - p01(t) exp(-g01 s), with p0 = p00 + p01
    the probability that a given device is OFF. Without a model the normalized
    value is returned.

    Example:
    >> corr_two_series(1617.2, 2.0e10, 0.0, 0.0)
    0.0
    """
    _check_times(t, s)
    t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
    p0_t, p01_t = _off_probability(g00, g01, t)
    p0_ts, _ = _off_probability(g00, g01, t + s)
    normalized = (1.0 - p0_t) * p0_ts - p01_t * np.exp(-g01 * s)
    result = normalized * _delta_r(model) ** 2
    return float(result) if result.ndim == 0 else result


def autocorr_two_series(g00: float, g01: float, t, s, model=None):
    """Auto-correlation (1 - p0(t)) p0(t + s); at s = 0 the variance of the ON indicator."""
    _check_times(t, s)
    t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
    p0_t, _ = _off_probability(g00, g01, t)
    p0_ts, _ = _off_probability(g00, g01, t + s)
    result = (1.0 - p0_t) * p0_ts * _delta_r(model) ** 2
    return float(result) if result.ndim == 0 else result


def two_series_correlation_grid(
    g00: float, g01: float, t, s, model, auto: bool = False
) -> CorrelationGrid:
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    function = autocorr_two_series if auto else corr_two_series
    values = function(g00, g01, t[:, None], s[None, :], model)
    return CorrelationGrid(t=t, s=s, values=np.asarray(values), delta_r=_delta_r(model))


def _indicators(ensemble, t: np.ndarray) -> np.ndarray:
    """(n_trials, len(t), N) ON indicator of every device."""
    device_times = ensemble.device_times()
    return device_times[:, None, :] <= t[None, :, None]


def _grid(t) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise DomainError("correlation times must be non-negative")
    return t


def _centered_products(indicators: np.ndarray, i: int, j: int) -> np.ndarray:
    """(n_trials, len(t)) products whose mean, scaled by n / (n - 1), is the unbiased covariance."""
    n = indicators.shape[0]
    x = indicators[:, :, i].astype(float)
    y = indicators[:, :, j].astype(float)
    return (x - x.mean(axis=0)) * (y - y.mean(axis=0)) * n / (n - 1)


def _estimate(t: np.ndarray, products: np.ndarray) -> CorrelationEstimate:
    n = products.shape[0]
    return CorrelationEstimate(
        t=t,
        values=products.mean(axis=0),
        standard_error=products.std(axis=0, ddof=1) / np.sqrt(n),
    )


def _check_devices(ensemble, devices: Sequence[int]):
    n_devices = ensemble.device_times().shape[1]
    for device in devices:
        if not 0 <= device < n_devices:
            raise DomainError(f"device {device} outside 0..{n_devices - 1}")
    if ensemble.n_trials < 2:
        raise DomainError("correlations need at least two trials")


def empirical_corr(ensemble, i: int, j: int, t) -> CorrelationEstimate:
    """
    Normalized one-time correlation of devices i and j over an ensemble.

    Parameters:
    - ensemble (Ensemble): trials with device switch times
    - i, j (int): device indices; i == j gives the auto-correlation
    - t (float | array): times in seconds

    Returns:
    - CorrelationEstimate: values and standard errors on the t grid

    Example:
    >> estimate = empirical_corr(ensemble, 0, 1, np.linspace(0, 1e-3, 200))
    """
    t = _grid(t)
    _check_devices(ensemble, (i, j))
    return _estimate(t, _centered_products(_indicators(ensemble, t), i, j))


def device_pairs(n_devices: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n_devices), 2))


def pair_averaged_corr(
    ensemble, t, pairs: Optional[Sequence[Tuple[int, int]]] = None
) -> CorrelationEstimate:
    """
    Correlation averaged over device pairs, all i < j by default. The standard
    error comes from the per-trial pair means.
    """
    t = _grid(t)
    n_devices = ensemble.device_times().shape[1]
    pairs = device_pairs(n_devices) if pairs is None else list(pairs)
    if not pairs:
        raise DomainError("pair averaging needs at least two devices")
    _check_devices(ensemble, [device for pair in pairs for device in pair])
    indicators = _indicators(ensemble, t)
    products = sum(_centered_products(indicators, i, j) for i, j in pairs) / len(pairs)
    return _estimate(t, products)
