"""
mc.py
-----
`memkin mc`: a Monte Carlo ensemble of network switching times.
"""

import logging
from typing import Dict, Optional

from memkin.errors import InfiniteTimeError, NotReducibleError
from memkin.exports import write_dataframe
from memkin.master import mean_switch_time_chain, reduce_chain
from memkin.montecarlo import Ensemble, run_ensemble
from memkin.report import display_profiling_info, profiled
from memkin.settings import MemkinConfig
from memkin.stats import summarize

from .scenario import Scenario


def analytic_mean(scenario: Scenario) -> Optional[float]:
    """Mean switching time of the reduced chain, when the network has one and no spread."""
    if scenario.spread is not None or scenario.models is None:
        return None
    try:
        return mean_switch_time_chain(reduce_chain(scenario.topology, scenario.device_models()))
    except (NotReducibleError, InfiniteTimeError):
        return None


def run_mc(scenario: Scenario, config: MemkinConfig) -> Ensemble:
    """
    Run the ensemble, write switch_times.csv and histogram.csv, and print the mean.

    Example:
    >> ensemble = run_mc(build_scenario(args, config, "mc"), config)
    """
    profiling_info: Dict = {}
    folder = scenario.output_folder

    with profiled("ensemble", profiling_info, scenario.profile):
        ensemble = run_ensemble(scenario.ensemble_config(config), scenario.trials)
    path = write_dataframe(ensemble.to_dataframe(), folder, "switch_times.csv")
    print(f"Wrote {ensemble.n_trials} trials to: {path}")

    if ensemble.n_censored == ensemble.n_trials:
        logging.warning("No trial switched within the horizon of %g s", ensemble.horizon)
        print(f"No trial switched within {ensemble.horizon:.6g} s; histogram skipped")
    else:
        with profiled("histogram", profiling_info, scenario.profile):
            histogram = summarize(ensemble.network_times(), scenario.bin_width, scenario.bins)
        path = write_dataframe(histogram.to_dataframe(), folder, "histogram.csv")
        print(f"Wrote histogram to: {path}")
        print(
            f"Mean switching time: {histogram.mean:.6g} s"
            f" +/- {histogram.standard_error:.3g} s (SE)"
        )

    mean = analytic_mean(scenario)
    if mean is not None:
        print(f"Analytic mean switching time: {mean:.6g} s")
    print(f"Censored trials: {ensemble.n_censored}")

    display_profiling_info(profiling_info, scenario.profile)
    return ensemble
