"""
records.py
----------
Trial records, ensembles and the settings that produce them.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, PositiveFloat, PositiveInt, model_validator

from memkin.devices import DeviceModel, ParamSpread, PoissonExpModel
from memkin.network import GeneralTopology, Topology, device_count


class Scheme(str, Enum):
    FIXED_STEP = "fixed"
    EVENT_DRIVEN = "event"


class ParamMode(str, Enum):
    IDENTICAL = "identical"
    REDRAWN = "redrawn"
    FIXED_ONCE = "fixed-once"


@dataclass
class TrialRecord:
    device_switch_times: np.ndarray  # first OFF->ON time per device, inf if never
    network_switch_time: float  # first passage to all ON, inf if never
    trajectory: Optional[List[Tuple[float, int]]] = None  # (time, state) after every change

    @property
    def switched(self) -> bool:
        return bool(np.isfinite(self.network_switch_time))


@dataclass
class Ensemble:
    trials: List[TrialRecord]
    seed: int
    scheme: Scheme
    param_mode: ParamMode
    dt: Optional[float] = None
    horizon: float = np.inf
    models: List[Sequence] = field(default_factory=list)  # device models used by each trial

    @property
    def n_trials(self) -> int:
        return len(self.trials)

    def network_times(self) -> np.ndarray:
        return np.array([trial.network_switch_time for trial in self.trials])

    def device_times(self) -> np.ndarray:
        """(n_trials, N) first switch time of every device."""
        return np.stack([trial.device_switch_times for trial in self.trials])

    @property
    def n_censored(self) -> int:
        return int(np.sum(~np.isfinite(self.network_times())))

    @property
    def mean(self) -> float:
        """Mean network switching time over the trials that switched."""
        times = self.network_times()
        times = times[np.isfinite(times)]
        return float(times.mean()) if times.size else float("inf")

    @property
    def standard_error(self) -> float:
        times = self.network_times()
        times = times[np.isfinite(times)]
        if times.size < 2:
            return float("nan")
        return float(times.std(ddof=1) / np.sqrt(times.size))

    def to_dataframe(self) -> pd.DataFrame:
        device_times = self.device_times()
        columns = {"trial": np.arange(self.n_trials)}
        for m in range(device_times.shape[1]):
            columns[f"device_{m}"] = device_times[:, m]
        columns["network_time"] = self.network_times()
        return pd.DataFrame(columns)


class EnsembleConfig(BaseModel):
    """
    Everything a Monte Carlo ensemble needs besides the trial count.

    `spread` applies to every device of a series or parallel topology; general
    topologies take per-device spreads from their netlist. `dt` and `horizon`
    default to values derived from the network rates.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    topology: Topology
    models: Optional[Tuple[DeviceModel, ...]] = None
    spread: Optional[ParamSpread] = None
    scheme: Scheme = Scheme.EVENT_DRIVEN
    param_mode: ParamMode = ParamMode.REDRAWN
    seed: int = 0
    dt: Optional[PositiveFloat] = None
    horizon: Optional[PositiveFloat] = None
    saturate: bool = False
    record_trajectory: bool = False
    dt_fraction: PositiveFloat = 0.01
    resolve_fraction: PositiveFloat = 0.01
    warn_step_probability: PositiveFloat = 0.1
    horizon_factor: PositiveFloat = 50.0
    max_block_steps: PositiveInt = 65536
    threads: Optional[PositiveInt] = None

    @model_validator(mode="after")
    def check_devices(self):
        n = device_count(self.topology)
        if self.models is None and not isinstance(self.topology, GeneralTopology):
            raise ValueError("series and parallel topologies need device models")
        if self.models is not None and len(self.models) not in (1, n):
            raise ValueError(f"got {len(self.models)} device models for {n} devices")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        for model, spread in zip(self.device_models(), self.device_spreads()):
            if spread is not None and not isinstance(model, PoissonExpModel):
                raise ValueError("parameter spreads apply to Poisson-exponential devices only")
        return self

    def device_models(self) -> List:
        n = device_count(self.topology)
        if self.models is None:
            return self.topology.netlist.device_models()
        if len(self.models) == 1:
            return list(self.models) * n
        return list(self.models)

    def device_spreads(self) -> List[Optional[ParamSpread]]:
        n = device_count(self.topology)
        if self.spread is not None:
            return [self.spread] * n
        if isinstance(self.topology, GeneralTopology):
            return self.topology.netlist.spreads()
        return [None] * n

    @property
    def has_spread(self) -> bool:
        return any(spread is not None for spread in self.device_spreads())
