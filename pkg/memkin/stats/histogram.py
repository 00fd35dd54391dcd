"""
histogram.py
------------
Histograms and moments of switching-time samples.

Moments come from the raw samples, never from the bins. Infinite samples mark
trials that did not switch within the horizon; they are counted as censored
and left out of the bins and the moments.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from memkin.errors import DomainError


@dataclass(frozen=True)
class Histogram:
    bin_edges: np.ndarray
    counts: np.ndarray
    n_total: int
    n_censored: int
    mean: float
    variance: float
    standard_error: float

    @property
    def bin_width(self) -> float:
        return float(self.bin_edges[1] - self.bin_edges[0])

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"bin_lo": self.bin_edges[:-1], "bin_hi": self.bin_edges[1:], "count": self.counts}
        )


def summarize(samples, bin_width: Optional[float] = None, bins: int = 50) -> Histogram:
    """
    Histogram with uniform bins from 0 to ceil(max / bin_width) * bin_width.

    Parameters:
    - samples (array-like): switching times in seconds; inf for censored trials
    - bin_width (float, optional): bin width in seconds; defaults to max / bins
    - bins (int): number of bins used when no width is given

    Returns:
    - Histogram: counts plus the exact sample mean, variance (ddof=0) and
      standard error (std with ddof=1 over sqrt(n))

    Raises:
    - DomainError: without finite samples, with negative or NaN samples, or a non-positive width

    Example:
    >> summarize(ensemble.network_times(), bin_width=1e-4).mean
    0.00181...
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if np.any(np.isnan(samples)) or np.any(samples < 0):
        raise DomainError("switching times must be non-negative numbers")
    finite = samples[np.isfinite(samples)]
    if finite.size == 0:
        raise DomainError("no finite samples to summarize")
    largest = float(finite.max())
    if bin_width is None:
        bin_width = largest / bins if largest > 0 else 1.0
    if not np.isfinite(bin_width) or bin_width <= 0:
        raise DomainError(f"bin width must be positive, got {bin_width}")

    n_bins = max(1, int(np.ceil(largest / bin_width)))
    edges = np.arange(n_bins + 1) * bin_width
    # the last edge can round below the maximum
    edges[-1] = max(edges[-1], largest)
    counts, _ = np.histogram(finite, bins=edges)
    standard_error = float("nan")
    if finite.size > 1:
        standard_error = float(finite.std(ddof=1) / np.sqrt(finite.size))
    return Histogram(
        bin_edges=edges,
        counts=counts,
        n_total=int(finite.size),
        n_censored=int(samples.size - finite.size),
        mean=float(finite.mean()),
        variance=float(finite.var()),
        standard_error=standard_error,
    )
