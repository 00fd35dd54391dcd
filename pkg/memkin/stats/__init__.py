from .correlation import (
    CorrelationEstimate,
    CorrelationGrid,
    autocorr_two_series,
    corr_two_series,
    device_pairs,
    empirical_corr,
    pair_averaged_corr,
    two_series_correlation_grid,
)
from .histogram import Histogram, summarize
from .oracles import (
    JointDistributionReport,
    joint_distribution_residuals,
    joint_pdf_normalization,
    joint_pdf_two_series,
    quadrature_moments,
)
