"""
scenario.py
-----------
The validated inputs of one command-line run.

A scenario combines the network (a netlist file or the series/parallel
shorthand), the device models and the command options, with unset options
filled in from the configuration.
"""

from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveFloat, PositiveInt

from memkin.devices import DeviceModel, ParamSpread
from memkin.errors import DomainError
from memkin.montecarlo import EnsembleConfig, ParamMode, Scheme
from memkin.netlist import (
    parse_interval,
    parse_model_option,
    parse_netlist,
    parse_sine,
    shorthand_spread,
    shorthand_topology,
)
from memkin.network import GeneralTopology, SineDrive, Topology
from memkin.settings import MemkinConfig

SHORTHAND_FLAGS = ("model", "va", "sine", "spread_tau0", "spread_v0")
IV_DRIVE_FLAGS = ("amplitude", "frequency")


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    topology: Topology
    models: Optional[Tuple[DeviceModel, ...]] = None
    spread: Optional[ParamSpread] = None
    output_folder: Path
    profile: bool = False
    seed: NonNegativeInt = 0
    trials: PositiveInt = 10000
    scheme: Scheme = Scheme.EVENT_DRIVEN
    param_mode: ParamMode = ParamMode.REDRAWN
    dt: Optional[PositiveFloat] = None
    saturate: bool = False
    t_end: Optional[PositiveFloat] = None
    bin_width: Optional[PositiveFloat] = None
    bins: PositiveInt = 50
    method: str = "auto"
    steps: PositiveInt = 2000
    t_end_factor: PositiveFloat = 20.0
    save_solution: Optional[str] = None
    cycles: PositiveInt = 100
    points_per_cycle: PositiveInt = 1000
    grid: PositiveInt = 200
    pairs: Optional[List[Tuple[NonNegativeInt, NonNegativeInt]]] = None

    def device_models(self) -> list:
        return self.ensemble_config().device_models()

    def ensemble_config(
        self, config: Optional[MemkinConfig] = None, record_trajectory: bool = False
    ) -> EnsembleConfig:
        settings = (config or {}).get("montecarlo", {})
        tunables = {
            key: settings[key]
            for key in (
                "dt_fraction",
                "resolve_fraction",
                "warn_step_probability",
                "horizon_factor",
                "max_block_steps",
                "threads",
            )
            if settings.get(key) is not None
        }
        return EnsembleConfig(
            topology=self.topology,
            models=self.models,
            spread=self.spread,
            scheme=self.scheme,
            param_mode=self.param_mode,
            seed=self.seed,
            dt=self.dt,
            horizon=self.t_end,
            saturate=self.saturate,
            record_trajectory=record_trajectory,
            **tunables,
        )


def _option(args, name: str, default):
    value = getattr(args, name, None)
    return default if value is None else value


def _flags_given(args, flags) -> List[str]:
    given = [flag for flag in flags if getattr(args, flag, None) is not None]
    return [f"--{flag.replace('_', '-')}" for flag in given]


def _pairs(texts) -> Optional[List[Tuple[int, int]]]:
    # "all" averages over every pair
    if not texts or texts == "all":
        return None
    if isinstance(texts, str):
        texts = [texts]
    pairs = []
    for text in texts:
        values = parse_interval(text, "--pair")
        if any(v != int(v) or v < 0 for v in values):
            raise DomainError(f"--pair expects two device indices, got {text!r}")
        pairs.append((int(values[0]), int(values[1])))
    return pairs


def _network(args, config: MemkinConfig, command: str):
    drive_flags = _flags_given(args, IV_DRIVE_FLAGS)
    if drive_flags and (args.netlist is not None or _flags_given(args, ("sine", "va"))):
        raise DomainError(
            f"{', '.join(drive_flags)} cannot be combined with --netlist, --sine or --va"
        )
    if args.netlist is not None:
        given = _flags_given(args, SHORTHAND_FLAGS)
        if given:
            raise DomainError(f"{', '.join(given)} only apply to --series and --parallel")
        path = Path(args.netlist)
        if not path.is_file():
            raise FileNotFoundError(f"Netlist does not exist: {path}")
        netlist, _ = parse_netlist(path.read_text())
        return GeneralTopology(netlist=netlist), None, None

    kind, n = ("series", args.series) if args.series is not None else ("parallel", args.parallel)
    model = parse_model_option(args.model, config)
    sine = parse_sine(args.sine) if args.sine is not None else None
    v_a = args.va
    if command == "iv" and sine is None and v_a is None:
        iv = config["iv"]
        sine = SineDrive(
            amplitude=_option(args, "amplitude", iv["amplitude"]),
            frequency=_option(args, "frequency", iv["frequency"]),
        )
    tau0_range = parse_interval(args.spread_tau0, "--spread-tau0") if args.spread_tau0 else None
    v0_range = parse_interval(args.spread_v0, "--spread-v0") if args.spread_v0 else None
    topology = shorthand_topology(kind, n, v_a=v_a, sine=sine)
    return topology, (model,), shorthand_spread(model, tau0_range, v0_range)


def build_scenario(args, config: MemkinConfig, command: str) -> Scenario:
    """
    Scenario of one command from parsed arguments and the configuration.

    Raises:
    - DomainError, NetlistError: invalid network or options
    - FileNotFoundError: missing netlist file

    Example:
    >> scenario = build_scenario(args, load_config(args.config), "mc")
    """
    topology, models, spread = _network(args, config, command)
    montecarlo = config["montecarlo"]
    scheme = Scheme(_option(args, "scheme", montecarlo["scheme"]))
    if command == "iv":
        scheme = Scheme.FIXED_STEP
    return Scenario(
        topology=topology,
        models=models,
        spread=spread,
        output_folder=Path(_option(args, "out", config["output_folder"])),
        profile=bool(args.profile or config["profile"]),
        seed=_option(args, "seed", montecarlo["seed"]),
        trials=_option(args, "trials", montecarlo["trials"]),
        scheme=scheme,
        param_mode=ParamMode(_option(args, "param_mode", montecarlo["param_mode"])),
        dt=getattr(args, "dt", None),
        saturate=bool(getattr(args, "saturate", False)),
        t_end=getattr(args, "t_end", None),
        bin_width=_option(args, "bin", config["histogram"]["bin_width"]),
        bins=config["histogram"]["bins"],
        method=_option(args, "method", "auto"),
        steps=_option(args, "steps", config["master"]["steps"]),
        t_end_factor=config["master"]["t_end_factor"],
        save_solution=getattr(args, "save_solution", None),
        cycles=_option(args, "cycles", config["iv"]["cycles"]),
        points_per_cycle=_option(args, "points_per_cycle", config["iv"]["points_per_cycle"]),
        grid=_option(args, "grid", config["correlate"]["grid"]),
        pairs=_pairs(getattr(args, "pair", None) or config["correlate"].get("pairs", "all")),
    )
