"""
ensemble.py
-----------
Independent Monte Carlo trials of one network, run on a thread pool.

Trial i always draws from `trial_stream(seed, i)`: in redrawn mode it first
draws tau0 then V0 for every spread device in device order, then simulates.
Results are assembled in trial order, so the same seed and inputs give the
same ensemble for any worker count.
"""

import concurrent.futures
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from more_itertools import chunked

from memkin.devices import sample_params
from memkin.errors import DomainError, SchemeError
from memkin.network import is_dc
from memkin.settings import resolve_thread_count

from .event_driven import simulate_event_driven
from .fixed_step import default_horizon, default_time_step, simulate_fixed_step
from .records import Ensemble, EnsembleConfig, ParamMode, Scheme, TrialRecord
from .responses import StateResponses
from .streams import parameter_stream, trial_stream

TRIALS_PER_TASK = 256


def draw_models(models: Sequence, spreads: Sequence, rng: np.random.Generator) -> List:
    return [
        model if spread is None else sample_params(model, spread, rng)
        for model, spread in zip(models, spreads)
    ]


def resolve_step_and_horizon(config: EnsembleConfig) -> Tuple[Optional[float], float, bool]:
    """
    Time step, horizon and saturation of an ensemble. Default steps saturate;
    an explicit dt keeps the strict step-size rule unless `saturate` is set.
    """
    models = config.device_models()
    spreads = config.device_spreads() if config.param_mode != ParamMode.IDENTICAL else None
    horizon = config.horizon
    if horizon is None:
        horizon = default_horizon(config.topology, models, spreads, config.horizon_factor)
    if config.scheme == Scheme.EVENT_DRIVEN:
        return None, horizon, False
    if config.dt is not None:
        return config.dt, horizon, config.saturate
    dt = default_time_step(
        config.topology, models, spreads, config.dt_fraction, config.resolve_fraction
    )
    return dt, horizon, True


def run_ensemble(config: EnsembleConfig, n_trials: int) -> Ensemble:
    """
    Run `n_trials` independent trials.

    Parameters:
    - config (EnsembleConfig): network, models, scheme and Monte Carlo settings
    - n_trials (int): number of trials, at least 1

    Returns:
    - Ensemble: trial records in trial order

    Raises:
    - SchemeError: event-driven scheme with a time-varying drive
    - StepSizeError: explicit dt too coarse for the network rates

    Example:
    >> config = EnsembleConfig(topology=SeriesTopology(n=2, drive=DCDrive(v_a=2.0)), models=(model,))
    >> run_ensemble(config, 10000).mean
    0.000309...
    """
    if n_trials < 1:
        raise DomainError(f"an ensemble needs at least one trial, got {n_trials}")
    if config.scheme == Scheme.EVENT_DRIVEN and not is_dc(config.topology):
        raise SchemeError("event-driven simulation needs DC drive; use the fixed-step scheme")

    dt, horizon, saturate = resolve_step_and_horizon(config)
    base_models = config.device_models()
    spreads = config.device_spreads()
    param_mode = config.param_mode if config.has_spread else ParamMode.IDENTICAL
    if param_mode == ParamMode.FIXED_ONCE:
        base_models = draw_models(base_models, spreads, parameter_stream(config.seed))
    responses = StateResponses(config.topology, base_models)

    def run_trial(i: int) -> Tuple[TrialRecord, List]:
        rng = trial_stream(config.seed, i)
        models = base_models
        if param_mode == ParamMode.REDRAWN:
            models = draw_models(base_models, spreads, rng)
        if config.scheme == Scheme.EVENT_DRIVEN:
            record = simulate_event_driven(
                config.topology, models, horizon, rng, config.record_trajectory, responses
            )
        else:
            record = simulate_fixed_step(
                config.topology,
                models,
                dt,
                horizon,
                rng,
                saturate=saturate,
                record_trajectory=config.record_trajectory,
                warn_step_probability=config.warn_step_probability,
                max_block_steps=config.max_block_steps,
                responses=responses,
            )
        return record, models

    def run_chunk(indices: List[int]) -> List[Tuple[TrialRecord, List]]:
        return [run_trial(i) for i in indices]

    threads = resolve_thread_count(config.threads)
    logging.info(
        "Running %d %s trials on %d threads (dt=%s, horizon=%g s)",
        n_trials,
        config.scheme.value,
        threads,
        dt,
        horizon,
    )
    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        chunks = executor.map(run_chunk, chunked(range(n_trials), TRIALS_PER_TASK))
        results = [result for chunk in chunks for result in chunk]

    ensemble = Ensemble(
        trials=[record for record, _ in results],
        seed=config.seed,
        scheme=config.scheme,
        param_mode=param_mode,
        dt=dt,
        horizon=horizon,
        models=[models for _, models in results],
    )
    logging.info(
        "Ensemble done: %d of %d trials switched", n_trials - ensemble.n_censored, n_trials
    )
    return ensemble
