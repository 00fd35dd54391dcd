"""
correlate.py
------------
`memkin correlate`: one-time resistance correlations over an ensemble.
"""

from typing import Dict, Optional

import numpy as np
import pandas as pd

from memkin.devices import PoissonExpModel
from memkin.exports import correlation_dataframe, write_dataframe
from memkin.master import two_series_rates
from memkin.montecarlo import run_ensemble
from memkin.network import DCDrive, SeriesTopology
from memkin.report import display_profiling_info, profiled
from memkin.settings import MemkinConfig
from memkin.stats import corr_two_series, empirical_corr, pair_averaged_corr

from .scenario import Scenario


def analytic_two_series(scenario: Scenario, t: np.ndarray) -> Optional[np.ndarray]:
    """Closed-form correlation of two identical series devices under DC, when it applies."""
    topology = scenario.topology
    if not isinstance(topology, SeriesTopology) or topology.n != 2:
        return None
    if not isinstance(topology.drive, DCDrive) or scenario.spread is not None:
        return None
    model = scenario.models[0] if len(scenario.models) == 1 else None
    if not isinstance(model, PoissonExpModel) or topology.drive.v_a <= 0:
        return None
    g00, g01 = two_series_rates(model, topology.drive.v_a)
    if g01 == 2.0 * g00:
        return None
    return np.asarray(corr_two_series(g00, g01, t, 0.0))


def run_correlate(scenario: Scenario, config: MemkinConfig) -> pd.DataFrame:
    """
    Run the ensemble and write corr.csv on a grid from 0 to --t-end, by default
    ten mean switching times.
    """
    profiling_info: Dict = {}
    # --t-end sets the grid here; the ensemble keeps its default horizon
    ensemble_config = scenario.model_copy(update={"t_end": None}).ensemble_config(config)

    with profiled("ensemble", profiling_info, scenario.profile):
        ensemble = run_ensemble(ensemble_config, scenario.trials)
    t_end = scenario.t_end
    if t_end is None:
        t_end = 10.0 * ensemble.mean if np.isfinite(ensemble.mean) else ensemble.horizon
    t = np.linspace(0.0, t_end, scenario.grid)

    with profiled("correlation", profiling_info, scenario.profile):
        if scenario.pairs:
            estimates = {}
            for i, j in scenario.pairs:
                estimate = empirical_corr(ensemble, i, j, t)
                estimates[f"{i}_{j}"] = (estimate.values, estimate.standard_error)
            analytic = None
            if set(scenario.pairs) <= {(0, 1), (1, 0)}:
                analytic = analytic_two_series(scenario, t)
        else:
            estimate = pair_averaged_corr(ensemble, t)
            estimates = {"avg": (estimate.values, estimate.standard_error)}
            analytic = analytic_two_series(scenario, t)

    df = correlation_dataframe(t, estimates, analytic)
    path = write_dataframe(df, scenario.output_folder, "corr.csv")
    print(f"Wrote correlations on {scenario.grid} times up to {t_end:.6g} s to: {path}")

    display_profiling_info(profiling_info, scenario.profile)
    return df
