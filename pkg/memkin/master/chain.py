"""
chain.py
--------
Reduced birth chain of N identical devices and its closed-form solution.

With identical devices every state with m devices ON has the same occupation
probability p_m. Level m is left at rate a_m = (N - m) * gamma_m and entered
at rate b_m = m * gamma_{m-1}, where gamma_m is the flip rate of a still-OFF
device while m devices are ON (a_N = 0):

    dp_m/dt = b_m p_{m-1} - a_m p_m

For pairwise distinct a_0..a_m the solution is a sum of exponentials,

    p_m(t) = sum_i (prod_k b_k) (prod_{j != i} 1 / (a_j - a_i)) exp(-a_i t),

evaluated here in log-magnitude-plus-sign form so that products of rates
spanning many decades neither overflow nor underflow.

Functions:
- `reduce_chain`, `chain_from_rates`, `chain_with_ceiling`
- `closed_form_pm`, `closed_form_coefficients`, `partial_fraction_residual`
- `mean_switch_time_chain`, `variance_switch_time_chain`
- `switching_time_pdf`, `switching_time_cdf`
"""

from dataclasses import dataclass

import numpy as np

from memkin.devices import DeviceState, switching_rate
from memkin.errors import DegeneracyError, DomainError, InfiniteTimeError, NotReducibleError
from memkin.network import DCDrive, ParallelTopology, SeriesTopology, resolve_models

DEGENERACY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ChainRates:
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return len(self.gamma)

    @property
    def a(self) -> np.ndarray:
        """Exit rates a_0..a_N with a_N = 0."""
        levels = np.arange(self.n)
        return np.append((self.n - levels) * self.gamma, 0.0)

    @property
    def b(self) -> np.ndarray:
        """Entry rates b_0..b_N with b_0 = 0."""
        levels = np.arange(1, self.n + 1)
        return np.insert(levels * self.gamma, 0, 0.0)

    @property
    def is_constant(self) -> bool:
        return bool(np.all(self.gamma == self.gamma[0]))


@dataclass(frozen=True)
class ClosedFormCoefficients:
    chain: ChainRates
    C: np.ndarray  # C[m, i], pre-exponential factor of exp(-a_i t) in p_m; zero for i > m

    def evaluate(self, m: int, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        a = self.chain.a[: m + 1]
        return np.exp(-np.multiply.outer(t, a)) @ self.C[m, : m + 1]


def chain_from_rates(gamma) -> ChainRates:
    """
    Chain from caller-supplied per-device rates gamma_0..gamma_{N-1}.

    Any monotone one-directional cascade fits, including the on-to-off
    direction when the gammas are reverse-switching rates.
    """
    gamma = np.asarray(gamma, dtype=float).ravel()
    if gamma.size == 0:
        raise DomainError("a chain needs at least one rate")
    if not np.all(np.isfinite(gamma)) or np.any(gamma < 0):
        raise DomainError("chain rates must be finite and non-negative")
    return ChainRates(gamma=gamma)


def chain_with_ceiling(chain: ChainRates, ceiling: float) -> ChainRates:
    return ChainRates(gamma=np.minimum(chain.gamma, ceiling))


def series_off_voltage(v_a: float, model, n: int, j) -> np.ndarray:
    """Voltage across a still-OFF series device while j of the n devices are ON."""
    j = np.asarray(j, dtype=float)
    return v_a * model.r_off / (j * model.r_on + (n - j) * model.r_off)


def reduce_chain(topology, models) -> ChainRates:
    """
    Collapse a series or parallel network of identical devices under DC drive.

    Parameters:
    - topology (SeriesTopology | ParallelTopology): network with a DC drive
    - models: a single model or one identical model per device

    Returns:
    - ChainRates: series gamma_j from the divider voltage of an OFF device with
      j devices ON; parallel gamma_j all equal to the rate at the drive voltage

    Raises:
    - NotReducibleError: general topology, non-DC drive or non-identical models

    Example:
    >> chain = reduce_chain(SeriesTopology(n=2, drive=DCDrive(v_a=2.0)), model)
    >> mean_switch_time_chain(chain)
    0.000309...
    """
    if not isinstance(topology, (SeriesTopology, ParallelTopology)):
        raise NotReducibleError("only series and parallel topologies reduce to a chain")
    if not isinstance(topology.drive, DCDrive):
        raise NotReducibleError("the reduced chain needs a DC drive")
    models = resolve_models(topology, models)
    model = models[0]
    if any(other != model for other in models[1:]):
        raise NotReducibleError("devices are not identical; use the full generator")

    n, v_a = topology.n, topology.drive.v_a
    if isinstance(topology, SeriesTopology):
        voltages = series_off_voltage(v_a, model, n, np.arange(n))
    else:
        voltages = np.full(n, v_a)
    gamma = switching_rate(voltages, model, DeviceState.OFF)
    return ChainRates(gamma=np.asarray(gamma, dtype=float))


def _check_distinct(a: np.ndarray, tolerance: float):
    gaps = np.abs(a[:, None] - a[None, :])
    scale = np.maximum(np.abs(a)[:, None], np.abs(a)[None, :])
    close = np.triu(gaps <= tolerance * scale, k=1)
    if np.any(close):
        i, j = np.argwhere(close)[0]
        raise DegeneracyError(
            f"exit rates a_{i}={a[i]:.6g} and a_{j}={a[j]:.6g} are too close for the closed form; "
            "integrate the master equation instead"
        )


def _times(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("times must be finite and non-negative")
    return t


def closed_form_pm(chain: ChainRates, m: int, t, tolerance: float = DEGENERACY_TOLERANCE):
    """
    Occupation probability of one state with m devices ON, starting from all OFF.

    Parameters:
    - chain (ChainRates): reduced chain
    - m (int): on-count, 0 <= m <= N
    - t (float | np.ndarray): time(s) in seconds
    - tolerance (float): relative gap below which two exit rates count as equal

    Returns:
    - float | np.ndarray: p_m(t), same shape as t

    Raises:
    - DegeneracyError: if two of a_0..a_m are closer than the tolerance allows
    """
    if not 0 <= m <= chain.n:
        raise DomainError(f"level {m} outside 0..{chain.n}")
    times = _times(t)
    a = chain.a[: m + 1]
    if m == 0:
        result = np.exp(-a[0] * times)
        return float(result) if np.ndim(t) == 0 else result
    b = chain.b[1 : m + 1]
    if np.any(b == 0):
        # level m is unreachable
        result = np.zeros_like(times)
        return float(result) if np.ndim(t) == 0 else result
    _check_distinct(a, tolerance)

    diffs = a[None, :] - a[:, None]  # diffs[i, j] = a_j - a_i
    np.fill_diagonal(diffs, 1.0)
    log_magnitude = np.sum(np.log(b)) - np.sum(np.log(np.abs(diffs)), axis=1)
    sign = np.prod(np.sign(diffs), axis=1)
    exponents = log_magnitude[None, :] - np.multiply.outer(times.ravel(), a)
    result = (np.exp(exponents) @ sign).reshape(times.shape)
    return float(result) if np.ndim(t) == 0 else result


def closed_form_coefficients(
    chain: ChainRates, tolerance: float = DEGENERACY_TOLERANCE
) -> ClosedFormCoefficients:
    """
    Pre-exponential factors built level by level: C[m, i] = b_m / (a_m - a_i) * C[m-1, i]
    for i < m, and C[m, m] = prod_{i<m} b_{i+1} / (a_i - a_m).
    """
    a, b = chain.a, chain.b
    _check_distinct(a, tolerance)
    size = chain.n + 1
    C = np.zeros((size, size))
    C[0, 0] = 1.0
    for m in range(1, size):
        C[m, :m] = b[m] / (a[m] - a[:m]) * C[m - 1, :m]
        C[m, m] = np.prod(b[1 : m + 1] / (a[:m] - a[m]))
    return ClosedFormCoefficients(chain=chain, C=C)


def partial_fraction_residual(a) -> float:
    """
    |sum_i prod_{j != i} 1 / (a_j - a_i)| relative to its largest term; the sum
    vanishes for any two or more distinct values.
    """
    a = np.asarray(a, dtype=float)
    diffs = a[None, :] - a[:, None]
    np.fill_diagonal(diffs, 1.0)
    terms = 1.0 / np.prod(diffs, axis=1)
    return float(abs(terms.sum()) / np.abs(terms).max())


def mean_switch_time_chain(chain: ChainRates) -> float:
    """Mean network switching time, sum_j 1 / a_j over j < N."""
    a = chain.a[:-1]
    if np.any(a == 0):
        raise InfiniteTimeError(
            f"level {int(np.argmax(a == 0))} is never left; the mean time is infinite"
        )
    return float(np.sum(1.0 / a))


def variance_switch_time_chain(chain: ChainRates) -> float:
    a = chain.a[:-1]
    if np.any(a == 0):
        raise InfiniteTimeError(
            f"level {int(np.argmax(a == 0))} is never left; the variance is infinite"
        )
    return float(np.sum(1.0 / a**2))


def switching_time_pdf(chain: ChainRates, t):
    """
    Density of the time the last device switches, b_N p_{N-1}(t); uses
    N g (1 - exp(-g t))^(N-1) exp(-g t) when all rates are equal.
    """
    times = _times(t)
    if chain.is_constant:
        gamma, n = chain.gamma[0], chain.n
        result = n * gamma * (-np.expm1(-gamma * times)) ** (n - 1) * np.exp(-gamma * times)
        return float(result) if np.ndim(t) == 0 else result
    return chain.b[-1] * closed_form_pm(chain, chain.n - 1, t)


def switching_time_cdf(chain: ChainRates, t):
    """Probability that every device is ON at t, p_N(t)."""
    times = _times(t)
    if chain.is_constant:
        result = (-np.expm1(-chain.gamma[0] * times)) ** chain.n
        return float(result) if np.ndim(t) == 0 else result
    return closed_form_pm(chain, chain.n, t)
