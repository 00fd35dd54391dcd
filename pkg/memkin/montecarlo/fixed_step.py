"""
fixed_step.py
-------------
Fixed-time-step trajectory simulation and the default step and horizon.

Each step, every device that can flip gets the switching probability
rate * dt and is compared with a uniform draw, in device-index order. Devices
whose draw falls below their probability flip at the end of the step.

Steps are evaluated in blocks: the device voltages of a block come from the
linear circuit response of the current state, the draws are made row by row,
and the first row holding a flip ends the block. The state cannot change
before that row, so the result has the same law as stepping one at a time.
"""

import logging
import warnings
from typing import Optional, Sequence

import numpy as np

from memkin.devices import fastest_corner_model, slowest_corner_model
from memkin.errors import (
    CoarseStepWarning,
    DomainError,
    InfiniteTimeError,
    NotReducibleError,
    StepSizeError,
)
from memkin.master import ChainRates, reduce_chain
from memkin.network import (
    as_bits,
    device_count,
    drives,
    initial_state,
    is_dc,
    rates_for_voltages,
    source_values,
)

from .records import TrialRecord
from .responses import StateResponses

MIN_BLOCK_STEPS = 16
PEAK_SAMPLES = 64


def _block_size(step_probability: Optional[float], max_block_steps: int) -> int:
    if step_probability is None:
        return min(MIN_BLOCK_STEPS, max_block_steps)
    if step_probability <= 0:
        return max_block_steps
    return int(np.clip(4.0 / step_probability, MIN_BLOCK_STEPS, max_block_steps))


def _corner_models(models: Sequence, spreads, corner) -> list:
    if spreads is None:
        return list(models)
    return [
        model if spread is None else corner(model, spread)
        for model, spread in zip(models, spreads)
    ]


def _try_chain(topology, models) -> Optional[ChainRates]:
    try:
        return reduce_chain(topology, list(models))
    except NotReducibleError:
        return None


def _peak_initial_rates(topology, models: Sequence) -> np.ndarray:
    """Largest rate of each device in the initial state over one drive period (DC: at t=0)."""
    responses = StateResponses(topology, models)
    state = initial_state(topology)
    bits = as_bits(state, device_count(topology))
    if is_dc(topology):
        times = np.zeros(1)
    else:
        period = max(drive.period for drive in drives(topology) if hasattr(drive, "period"))
        times = np.linspace(0.0, period, PEAK_SAMPLES, endpoint=False)
    voltages = source_values(topology, times) @ responses.unit_voltages(state)
    return rates_for_voltages(voltages, models, bits).max(axis=0)


def _positive_initial_rates(topology, models) -> np.ndarray:
    rates = _peak_initial_rates(topology, models)
    positive = rates[rates > 0]
    if positive.size == 0:
        raise InfiniteTimeError("no device can switch from the initial state")
    return positive


def default_time_step(
    topology,
    models: Sequence,
    spreads=None,
    dt_fraction: float = 0.01,
    resolve_fraction: float = 0.01,
) -> float:
    """
    Default fixed step, set by the fastest corner of any parameter spread.

    For series and parallel networks of identical devices under DC drive, a
    chain level j is resolvable when its mean dwell 1/a_j is at least
    `resolve_fraction` of the mean switching time; the step is `dt_fraction`
    over the largest per-device rate of the resolvable levels. Faster levels
    are left to saturate. Other networks use `dt_fraction` over the largest
    rate of the initial state.

    Example:
    >> default_time_step(SeriesTopology(n=10, drive=DCDrive(v_a=10.0)), [model] * 10)
    7.6...e-08
    """
    corner = _corner_models(models, spreads, fastest_corner_model)
    chain = _try_chain(topology, corner)
    if chain is not None and np.all(chain.a[:-1] > 0):
        dwell = 1.0 / chain.a[:-1]
        resolvable = dwell >= resolve_fraction * dwell.sum()
        if not np.any(resolvable):
            resolvable = dwell == dwell.max()
        dt = dt_fraction / chain.gamma[resolvable].max()
    else:
        dt = dt_fraction / _positive_initial_rates(topology, corner).max()
    logging.debug("Default time step %g s", dt)
    return float(dt)


def default_horizon(
    topology, models: Sequence, spreads=None, horizon_factor: float = 50.0
) -> float:
    """
    `horizon_factor` times the mean switching time of the slowest spread corner;
    N over the smallest positive initial rate stands in for the mean when the
    network does not reduce to a chain.
    """
    corner = _corner_models(models, spreads, slowest_corner_model)
    chain = _try_chain(topology, corner)
    if chain is not None and np.all(chain.a[:-1] > 0):
        mean = float(np.sum(1.0 / chain.a[:-1]))
    else:
        mean = device_count(topology) / _positive_initial_rates(topology, corner).min()
    return float(horizon_factor * mean)


def _check_step(
    peak: float, dt: float, saturate: bool, warn_step_probability: float, warned: bool
) -> bool:
    if saturate:
        return warned
    if peak > 1.0:
        raise StepSizeError(
            f"switching probability per step is {peak:.3g} with dt={dt:.3g} s; "
            "reduce dt or allow saturation"
        )
    if peak > warn_step_probability and not warned:
        warnings.warn(
            f"switching probability per step reaches {peak:.3g}; "
            "results are biased by the time step",
            CoarseStepWarning,
            stacklevel=3,
        )
        return True
    return warned


def simulate_fixed_step(
    topology,
    models: Sequence,
    dt: float,
    horizon: float,
    rng: np.random.Generator,
    saturate: bool = False,
    record_trajectory: bool = False,
    stop_at_all_on: bool = True,
    warn_step_probability: float = 0.1,
    max_block_steps: int = 65536,
    responses: Optional[StateResponses] = None,
) -> TrialRecord:
    """
    Simulate one trajectory with a fixed time step.

    Parameters:
    - topology: series, parallel or general topology, any drive
    - models (sequence): one device model per device
    - dt (float): time step in seconds
    - horizon (float): simulated time in seconds
    - rng (np.random.Generator): the trial's random stream
    - saturate (bool): treat per-step probabilities above 1 as certain flips
    - record_trajectory (bool): keep (time, state) after every change
    - stop_at_all_on (bool): end the trial once every device is ON
    - warn_step_probability (float): per-step probability above which a CoarseStepWarning is issued
    - max_block_steps (int): largest number of steps evaluated at once
    - responses (StateResponses, optional): shared circuit-response cache

    Returns:
    - TrialRecord: switch times, inf where the horizon came first

    Raises:
    - StepSizeError: if dt * rate exceeds 1 and `saturate` is off

    Example:
    >> record = simulate_fixed_step(topology, [model] * 2, 1e-7, 1e-2, trial_stream(0, 0))
    >> record.network_switch_time
    """
    if not np.isfinite(dt) or dt <= 0:
        raise DomainError(f"dt must be positive and finite, got {dt}")
    if not np.isfinite(horizon) or horizon <= 0:
        raise DomainError(f"the fixed-step horizon must be positive and finite, got {horizon}")
    models = list(models)
    n = device_count(topology)
    responses = responses or StateResponses(topology, models)
    dc = is_dc(topology)
    all_on = (1 << n) - 1
    total_steps = int(np.ceil(horizon / dt))

    state = initial_state(topology)
    device_times = np.full(n, np.inf)
    network_time = 0.0 if state == all_on else np.inf
    trajectory = [(0.0, state)] if record_trajectory else None
    warned = False
    previous_probability = None
    k = 0

    while k < total_steps:
        if stop_at_all_on and state == all_on:
            break
        bits = as_bits(state, n)
        if dc:
            rates = rates_for_voltages(responses.voltages(state, 0.0), models, bits)
            if not np.any(rates > 0):
                break
            block = min(_block_size(float(rates.sum() * dt), max_block_steps), total_steps - k)
            probabilities = np.broadcast_to(rates * dt, (block, n))
        else:
            block = min(_block_size(previous_probability, max_block_steps), total_steps - k)
            times = (k + np.arange(block)) * dt
            rates = rates_for_voltages(responses.voltages(state, times), models, bits)
            probabilities = rates * dt
            previous_probability = float(probabilities.sum(axis=1).max())

        switchable = np.flatnonzero(np.any(probabilities > 0, axis=0))
        if switchable.size == 0:
            k += block
            continue
        draws = rng.random((block, switchable.size))
        flips = draws < probabilities[:, switchable]
        hits = np.flatnonzero(flips.any(axis=1))
        last_row = hits[0] if hits.size else block - 1
        warned = _check_step(
            float(probabilities[: last_row + 1].max()), dt, saturate, warn_step_probability, warned
        )
        if not hits.size:
            k += block
            continue

        k += last_row + 1
        t_flip = k * dt
        for m in switchable[flips[last_row]]:
            state ^= 1 << int(m)
            if (state >> int(m)) & 1 and np.isinf(device_times[m]):
                device_times[m] = t_flip
        if record_trajectory:
            trajectory.append((t_flip, state))
        if state == all_on and np.isinf(network_time):
            network_time = t_flip

    return TrialRecord(
        device_switch_times=device_times,
        network_switch_time=float(network_time),
        trajectory=trajectory,
    )
