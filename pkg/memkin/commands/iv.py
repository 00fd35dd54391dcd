"""
iv.py
-----
`memkin iv`: stochastic current-voltage sweeps under a sinusoidal drive.
"""

from typing import Dict

from memkin.exports import export_iv
from memkin.montecarlo import IVSweepResult, draw_models, iv_sweep, parameter_stream, trial_stream
from memkin.report import display_profiling_info, profiled
from memkin.settings import MemkinConfig

from .scenario import Scenario


def run_iv(scenario: Scenario, config: MemkinConfig) -> IVSweepResult:
    """
    Sweep, write iv_raw.csv, iv_avg.csv and iv_events.csv, and print the loop area.

    Devices with a parameter spread are drawn once from the parameter stream of the seed.
    """
    profiling_info: Dict = {}
    ensemble_config = scenario.ensemble_config(config)
    models = ensemble_config.device_models()
    if ensemble_config.has_spread:
        spreads = ensemble_config.device_spreads()
        models = draw_models(models, spreads, parameter_stream(scenario.seed))

    with profiled("iv sweep", profiling_info, scenario.profile):
        result = iv_sweep(
            scenario.topology,
            models,
            scenario.cycles,
            scenario.points_per_cycle,
            trial_stream(scenario.seed, 0),
        )
    paths = export_iv(result, scenario.output_folder)
    print(f"Wrote I-V traces to: {', '.join(str(path) for path in paths)}")
    print(f"Switch events: {len(result.switch_events)}")
    print(f"Loop area of the averaged trace: {result.loop_area:.6g} V*A")

    display_profiling_info(profiling_info, scenario.profile)
    return result
