"""
parallel.py
-----------
Closed forms for N identical devices in parallel under constant drive, where
every device switches independently at the same rate g.
"""

from typing import Tuple

import numpy as np

from memkin.errors import DomainError


def harmonic_number(n: int) -> float:
    if n < 0:
        raise DomainError("harmonic numbers need n >= 0")
    return float(np.sum(1.0 / np.arange(1, n + 1)))


def _check(n: int, gamma: float):
    if n < 1:
        raise DomainError("a parallel network needs at least one device")
    if not np.isfinite(gamma) or gamma <= 0:
        raise DomainError("the per-device rate must be positive and finite")


def parallel_all_on(n: int, gamma: float, t):
    """
    Probability that all N devices are ON at time t, (1 - exp(-g t))^N.

    Example:
    >> parallel_all_on(2, 1617.2, 1e-3)
    0.643...
    """
    _check(n, gamma)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("times must be non-negative")
    return (-np.expm1(-gamma * t)) ** n


def parallel_mean_time(n: int, gamma: float) -> float:
    """Mean time until all devices are ON, H_N / g."""
    _check(n, gamma)
    return harmonic_number(n) / gamma


def single_device_solution(gamma: float, t) -> Tuple[np.ndarray, np.ndarray]:
    """OFF and ON probabilities of one device starting OFF: (exp(-g t), 1 - exp(-g t))."""
    _check(1, gamma)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("times must be non-negative")
    return np.exp(-gamma * t), -np.expm1(-gamma * t)
