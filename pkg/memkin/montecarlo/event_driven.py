"""
Exact trajectory sampling under DC drive.

From each state the holding time is exponential in the total flip rate, and
the flipping device is chosen with probability proportional to its rate.
"""

from typing import Optional, Sequence

import numpy as np

from memkin.errors import DomainError, SchemeError
from memkin.network import as_bits, device_count, initial_state, is_dc, rates_for_voltages

from .records import TrialRecord
from .responses import StateResponses


def simulate_event_driven(
    topology,
    models: Sequence,
    horizon: float,
    rng: np.random.Generator,
    record_trajectory: bool = False,
    responses: Optional[StateResponses] = None,
) -> TrialRecord:
    """
    Simulate one trajectory until every device is ON, no device can flip, or the horizon.

    Per event the holding time is drawn first, then one uniform selects the device.

    Raises:
    - SchemeError: if any source is not DC

    Example:
    >> record = simulate_event_driven(topology, [model] * 2, np.inf, trial_stream(0, 0))
    """
    if not is_dc(topology):
        raise SchemeError("event-driven simulation needs DC drive; use the fixed-step scheme")
    if np.isnan(horizon) or horizon <= 0:
        raise DomainError(f"the horizon must be positive, got {horizon}")
    models = list(models)
    n = device_count(topology)
    responses = responses or StateResponses(topology, models)
    all_on = (1 << n) - 1

    state = initial_state(topology)
    device_times = np.full(n, np.inf)
    trajectory = [(0.0, state)] if record_trajectory else None
    t = 0.0

    while state != all_on:
        rates = rates_for_voltages(responses.voltages(state, 0.0), models, as_bits(state, n))
        cumulative = np.cumsum(rates)
        total = cumulative[-1]
        if total <= 0:
            break
        holding = rng.exponential(1.0 / total)
        if t + holding > horizon:
            break
        t += holding
        m = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
        m = min(m, n - 1)
        state ^= 1 << m
        if (state >> m) & 1 and np.isinf(device_times[m]):
            device_times[m] = t
        if record_trajectory:
            trajectory.append((t, state))

    return TrialRecord(
        device_switch_times=device_times,
        network_switch_time=t if state == all_on else float("inf"),
        trajectory=trajectory,
    )
