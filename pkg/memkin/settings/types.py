from typing import List, Optional, TypedDict, Union


class DeviceConfig(TypedDict, total=False):
    kind: str
    tau0: float
    v0: float
    tau1: float
    v1: float
    r_on: float
    r_off: float


class APTMConfig(TypedDict, total=False):
    kind: str
    k_on: float
    k_off: float
    v_on: float
    v_off: float
    alpha_on: float
    alpha_off: float
    r_on: float
    r_off: float


class SolverConfig(TypedDict):
    method: str
    rtol: float
    atol: float
    max_devices: int
    max_rhs_evaluations: int
    degeneracy_tolerance: float
    rate_ceiling: Optional[float]


class MonteCarloConfig(TypedDict):
    scheme: str
    trials: int
    seed: int
    dt_fraction: float
    resolve_fraction: float
    warn_step_probability: float
    horizon_factor: float
    max_block_steps: int
    param_mode: str
    threads: Optional[int]


class MasterConfig(TypedDict):
    steps: int
    t_end_factor: float


class HistogramConfig(TypedDict):
    bin_width: Optional[float]
    bins: int


class IVConfig(TypedDict):
    cycles: int
    points_per_cycle: int
    amplitude: float
    frequency: float


class CorrelateConfig(TypedDict):
    grid: int
    pairs: Union[str, List[str]]


class MemkinConfig(TypedDict):
    device: DeviceConfig
    aptm: APTMConfig
    solver: SolverConfig
    montecarlo: MonteCarloConfig
    master: MasterConfig
    histogram: HistogramConfig
    iv: IVConfig
    correlate: CorrelateConfig
    profile: bool
    output_folder: str
    log_level: str
