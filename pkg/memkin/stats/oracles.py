"""
oracles.py
----------
Quadrature checks of the two-series closed forms against their joint
switching-time density.

For two identical devices in series with rates g00 (both OFF) and g01 (one
ON), the density of the switch times (t1, t2) with t1 > t2 is

    Phi(t1, t2) = g00 exp(-2 g00 t2) g01 exp(-g01 (t1 - t2))

and the density is symmetric under swapping t1 and t2. Integrals are nested
adaptive Gauss-Kronrod quadratures over the t1 > t2 half, written in the
offset u = t1 - t2, and doubled. Infinite limits are cut where the
exponential envelope falls below 1e-14 of its peak.
"""

import warnings
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from memkin.errors import AccuracyError, DomainError
from memkin.master import memristor1_stats, two_series_moments, two_series_solution

ENVELOPE_DECADES = -np.log(1e-14)
RELATIVE_TOLERANCE = 1e-10
SUBDIVISION_LIMIT = 500


def _quad(
    function: Callable, lower: float, upper: float, points: Optional[Sequence[float]] = None
) -> float:
    if upper <= lower:
        return 0.0
    if points is not None:
        points = [p for p in points if lower < p < upper] or None
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, _ = quad(
                function,
                lower,
                upper,
                epsabs=0.0,
                epsrel=RELATIVE_TOLERANCE,
                limit=SUBDIVISION_LIMIT,
                points=points,
            )
        except IntegrationWarning as e:
            raise AccuracyError(f"quadrature did not converge on [{lower:.3g}, {upper:.3g}]: {e}")
    return value


def joint_pdf_two_series(g00: float, g01: float, t1, t2):
    """
    Joint density of the two device switch times.

    Example:
    >> joint_pdf_two_series(1.0, 3.0, 2.0, 1.0) == joint_pdf_two_series(1.0, 3.0, 1.0, 2.0)
    True
    """
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    if np.any(t1 < 0) or np.any(t2 < 0):
        raise DomainError("switch times must be non-negative")
    first = np.minimum(t1, t2)
    result = g00 * g01 * np.exp(-2.0 * g00 * first - g01 * (np.maximum(t1, t2) - first))
    return float(result) if result.ndim == 0 else result


class _HalfPlane:
    """Integrals of Phi over the t1 > t2 half, in the variables (t2, u)."""

    def __init__(self, g00: float, g01: float):
        self.g00, self.g01 = g00, g01
        self.u_cut = ENVELOPE_DECADES / g01
        self.t2_cut = ENVELOPE_DECADES / (2.0 * g00)
        self._scales = [k / g01 for k in (1.0, 10.0, 30.0)]

    def density(self, t2: float, u: float) -> float:
        return self.g00 * np.exp(-2.0 * self.g00 * t2) * self.g01 * np.exp(-self.g01 * u)

    def integrate(self, weight, t2_range: Tuple[float, float], u_range) -> float:
        """
        Integral of weight(t2, u) * Phi over t2 in `t2_range` and u in u_range(t2);
        an infinite upper limit is replaced by the envelope cut.
        """
        t2_lower, t2_upper = t2_range
        if np.isinf(t2_upper):
            t2_upper = t2_lower + self.t2_cut

        def inner(t2: float) -> float:
            u_lower, u_upper = u_range(t2)
            u_upper = min(u_upper, u_lower + self.u_cut)
            return _quad(
                lambda u: weight(t2, u) * self.density(t2, u),
                u_lower,
                u_upper,
                points=[u_lower + scale for scale in self._scales],
            )

        return _quad(inner, t2_lower, t2_upper)


@dataclass
class JointDistributionReport:
    """Quadrature value, closed-form value and residual per checked quantity."""

    rows: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def residual(self, name: str) -> float:
        quadrature, closed_form = self.rows[name]
        if closed_form == 0:
            return abs(quadrature)
        return abs(quadrature - closed_form) / abs(closed_form)

    @property
    def max_residual(self) -> float:
        return max(self.residual(name) for name in self.rows)


def joint_pdf_normalization(g00: float, g01: float) -> float:
    """Total probability of the joint density, twice its integral over t1 > t2."""
    half = _HalfPlane(g00, g01)
    return 2.0 * half.integrate(lambda t2, u: 1.0, (0.0, np.inf), lambda t2: (0.0, np.inf))


def joint_distribution_residuals(g00: float, g01: float, t: float) -> JointDistributionReport:
    """
    Recompute the two-series closed forms by integrating the joint density.

    Checks, at time t where it applies:
    - mean_time: the mean of max(t1, t2) against 1/(2 g00) + 1/g01
    - phi1: the marginal density of t1 against the device 1 switch-time density
    - p11, p01, p00: the square, strip and quadrant integrals against the
      occupation probabilities

    Raises:
    - AccuracyError: if a quadrature does not converge

    Example:
    >> report = joint_distribution_residuals(1617.2, 2.0e10, 309e-6)
    >> report.residual("mean_time") < 1e-6
    True
    """
    if t < 0:
        raise DomainError("t must be non-negative")
    half = _HalfPlane(g00, g01)
    report = JointDistributionReport()

    mean_time = 2.0 * half.integrate(lambda t2, u: t2 + u, (0.0, np.inf), lambda t2: (0.0, np.inf))
    report.rows["mean_time"] = (mean_time, two_series_moments(g00, g01)[0])

    # t1 = t fixed: t2 below t lies on the t1 > t2 side, t2 above t on the mirrored side
    below = _quad(lambda u: half.density(t - u, u), 0.0, min(t, half.u_cut), points=half._scales)
    above = _quad(lambda u: half.density(t, u), 0.0, half.u_cut, points=half._scales)
    phi1, _ = memristor1_stats(g00, g01, t)
    report.rows["phi1"] = (below + above, float(phi1))

    p00, p01, p11 = two_series_solution(g00, g01, t)
    # both ON: t2 < t1 <= t
    square = 2.0 * half.integrate(lambda t2, u: 1.0, (0.0, t), lambda t2: (0.0, t - t2))
    # device 2 ON, device 1 OFF: t2 <= t < t1
    strip = half.integrate(lambda t2, u: 1.0, (0.0, t), lambda t2: (t - t2, np.inf))
    # both OFF: t < t2 < t1
    quadrant = 2.0 * half.integrate(lambda t2, u: 1.0, (t, np.inf), lambda t2: (0.0, np.inf))
    report.rows["p11"] = (square, float(p11))
    report.rows["p01"] = (strip, float(p01))
    report.rows["p00"] = (quadrant, float(p00))
    return report


def quadrature_moments(density: Callable, t_max: float, points: Optional[Sequence[float]] = None):
    """
    Normalization, mean and variance of a density on [0, t_max] by adaptive quadrature.

    Example:
    >> quadrature_moments(lambda t: switching_time_pdf(chain, t), 50 * mean_switch_time_chain(chain))
    (1.0..., 7.24...e-05, ...)
    """
    normalization = _quad(density, 0.0, t_max, points)
    mean = _quad(lambda t: t * density(t), 0.0, t_max, points) / normalization
    variance = _quad(lambda t: (t - mean) ** 2 * density(t), 0.0, t_max, points) / normalization
    return normalization, mean, variance
