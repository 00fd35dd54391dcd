"""
iv_sweep.py
-----------
Current-voltage sweeps under a sinusoidal drive.

The network is simulated with the fixed-step scheme, one step per sample,
and sampled at the start of every step: the state between flips gives the
circuit response, from which the current delivered by the first source
follows. The state holds until the flip at the end of the step.

Switch events carry the flip time and the voltage across the device that
switched, taken at the start of the step the flip was drawn in.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from memkin.errors import DomainError
from memkin.network import SineDrive, as_bits, device_count, drives, source_values

from .fixed_step import simulate_fixed_step
from .responses import StateResponses


@dataclass
class IVSweepResult:
    times: np.ndarray  # (cycles, points_per_cycle)
    voltages: np.ndarray  # (cycles, points_per_cycle)
    currents: np.ndarray  # (cycles, points_per_cycle)
    switch_events: List[Tuple[float, float, int, str]]  # (time, voltage, device, "on" | "off")

    @property
    def average_voltage(self) -> np.ndarray:
        return self.voltages.mean(axis=0)

    @property
    def average_current(self) -> np.ndarray:
        return self.currents.mean(axis=0)

    @property
    def loop_area(self) -> float:
        return loop_area(self.average_voltage, self.average_current)

    def raw_dataframe(self) -> pd.DataFrame:
        cycles, points = self.voltages.shape
        return pd.DataFrame(
            {
                "cycle": np.repeat(np.arange(cycles), points),
                "sample": np.tile(np.arange(points), cycles),
                "t": self.times.ravel(),
                "v": self.voltages.ravel(),
                "i": self.currents.ravel(),
            }
        )

    def average_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "sample": np.arange(self.voltages.shape[1]),
                "v": self.average_voltage,
                "i": self.average_current,
            }
        )

    def events_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.switch_events, columns=["t", "v", "device", "direction"])


def _shoelace(x: np.ndarray, y: np.ndarray) -> float:
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def loop_area(voltage: np.ndarray, current: np.ndarray) -> float:
    """
    Area enclosed by a pinched I-V loop: the absolute shoelace areas of the
    positive and the negative voltage lobes, summed.

    The trace is rotated to start where the voltage turns non-negative, so a
    lobe that wraps around the end of the cycle stays in one piece.

    Example:
    >> loop_area(result.average_voltage, result.average_current)
    """
    voltage = np.asarray(voltage, dtype=float)
    current = np.asarray(current, dtype=float)
    positive = voltage >= 0
    rises = np.flatnonzero(positive & ~np.roll(positive, 1))
    if rises.size:
        voltage = np.roll(voltage, -rises[0])
        current = np.roll(current, -rises[0])
        positive = voltage >= 0
    area = 0.0
    for lobe in (positive, ~positive):
        if np.count_nonzero(lobe) >= 3:
            area += _shoelace(voltage[lobe], current[lobe])
    return area


def iv_sweep(
    topology,
    models: Sequence,
    cycles: int,
    points_per_cycle: int,
    rng: np.random.Generator,
    saturate: bool = True,
) -> IVSweepResult:
    """
    Simulate `cycles` drive periods and sample voltage and current `points_per_cycle` times each.

    Parameters:
    - topology: network whose first source carries a SineDrive
    - models (sequence): one device model per device
    - cycles (int): number of drive periods
    - points_per_cycle (int): samples, and time steps, per period
    - rng (np.random.Generator): random stream
    - saturate (bool): allow per-step probabilities above 1

    Returns:
    - IVSweepResult

    Example:
    >> topology = ParallelTopology(n=1, drive=SineDrive(amplitude=1.5, frequency=1e3))
    >> iv_sweep(topology, [model], 100, 1000, trial_stream(0, 0)).loop_area
    """
    if cycles < 1 or points_per_cycle < 4:
        raise DomainError("an I-V sweep needs at least one cycle of four points")
    drive = drives(topology)[0]
    if not isinstance(drive, SineDrive):
        raise DomainError("I-V sweeps need a sinusoidal drive on the first source")
    models = list(models)
    n = device_count(topology)
    dt = drive.period / points_per_cycle
    responses = StateResponses(topology, models)

    record = simulate_fixed_step(
        topology,
        models,
        dt,
        cycles * drive.period,
        rng,
        saturate=saturate,
        record_trajectory=True,
        stop_at_all_on=False,
        responses=responses,
    )
    flip_times = np.array([t for t, _ in record.trajectory])
    states = [state for _, state in record.trajectory]

    times = np.arange(cycles * points_per_cycle) * dt
    # state in force at each sample; flips at time t happen at the end of the step
    segment = np.searchsorted(flip_times, times + 0.5 * dt, side="right") - 1
    sources = source_values(topology, times)
    currents = np.empty_like(times)
    for k in np.unique(segment):
        rows = segment == k
        currents[rows] = sources[rows] @ responses.unit_currents(states[k])[:, 0]

    switch_events = []
    for (_, before), (t, after) in zip(record.trajectory, record.trajectory[1:]):
        # the flip was drawn from the voltages at the start of its step
        step_start = (round(t / dt) - 1) * dt
        device_voltages = responses.voltages(before, step_start)
        for m in np.flatnonzero(as_bits(before ^ after, n)):
            direction = "on" if (after >> int(m)) & 1 else "off"
            switch_events.append((t, float(device_voltages[m]), int(m), direction))

    shape = (cycles, points_per_cycle)
    return IVSweepResult(
        times=times.reshape(shape),
        voltages=sources[:, 0].reshape(shape),
        currents=currents.reshape(shape),
        switch_events=switch_events,
    )
