"""
Inline network descriptions for the command line: `--series N` or
`--parallel N` with a `--model k=v,...` device and a DC or sine drive.
"""

from typing import Dict, Optional, Tuple

from memkin.devices import DeviceModel, ParamSpread, build_model, build_spread
from memkin.errors import DomainError
from memkin.network import DCDrive, ParallelTopology, SeriesTopology, SineDrive

MODEL_OPTION_KEYS = {
    "kind": "kind",
    "tau0": "tau0",
    "v0": "v0",
    "tau1": "tau1",
    "v1": "v1",
    "ron": "r_on",
    "roff": "r_off",
    "kon": "k_on",
    "koff": "k_off",
    "von": "v_on",
    "voff": "v_off",
    "aon": "alpha_on",
    "aoff": "alpha_off",
}


def _numbers(text: str, what: str):
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise DomainError(f"{what} expects comma-separated numbers, got {text!r}")


def parse_model_option(text: Optional[str], config: Dict) -> DeviceModel:
    """
    Device model from `k=v,...` overrides on top of the configured defaults of its kind.

    Example:
    >> parse_model_option("tau0=2e5,v0=0.04", load_config())
    PoissonExpModel(kind='poisson', tau0=200000.0, v0=0.04, ...)
    """
    overrides = {}
    for item in filter(None, (text or "").split(",")):
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep or key not in MODEL_OPTION_KEYS:
            raise DomainError(
                f"unknown model option {item!r}; expected one of {', '.join(MODEL_OPTION_KEYS)}"
            )
        if key == "kind":
            overrides["kind"] = value.strip().lower()
            continue
        try:
            overrides[MODEL_OPTION_KEYS[key]] = float(value)
        except ValueError:
            raise DomainError(f"model option {key} expects a number, got {value!r}")
    kind = overrides.get("kind", "poisson")
    if kind not in ("poisson", "aptm"):
        raise DomainError(f"model kind must be poisson or aptm, got {kind!r}")
    defaults = config["device"] if kind == "poisson" else config["aptm"]
    return build_model({**defaults, **overrides, "kind": kind})


def parse_interval(text: str, what: str) -> Tuple[float, float]:
    values = _numbers(text, what)
    if len(values) != 2:
        raise DomainError(f"{what} expects lo,hi, got {text!r}")
    return values[0], values[1]


def parse_sine(text: str) -> SineDrive:
    """SineDrive from `AMP,FREQ[,PHASE]`."""
    values = _numbers(text, "--sine")
    if len(values) not in (2, 3):
        raise DomainError(f"--sine expects AMP,FREQ[,PHASE], got {text!r}")
    if values[1] <= 0:
        raise DomainError("the sine frequency must be positive")
    phase = values[2] if len(values) == 3 else 0.0
    return SineDrive(amplitude=values[0], frequency=values[1], phase=phase)


def shorthand_spread(model, tau0_range=None, v0_range=None) -> Optional[ParamSpread]:
    """Spread from optional intervals; a missing interval pins the model's own value."""
    if tau0_range is None and v0_range is None:
        return None
    if model.kind != "poisson":
        raise DomainError("parameter spreads apply to Poisson-exponential devices only")
    return build_spread(tau0_range or (model.tau0, model.tau0), v0_range or (model.v0, model.v0))


def shorthand_topology(
    kind: str, n: int, v_a: Optional[float] = None, sine: Optional[SineDrive] = None
):
    if n < 1:
        raise DomainError(f"a network needs at least one device, got {n}")
    if (v_a is None) == (sine is None):
        raise DomainError("give exactly one of a DC voltage and a sine drive")
    drive = sine if sine is not None else DCDrive(v_a=v_a)
    if kind == "series":
        return SeriesTopology(n=n, drive=drive)
    if kind == "parallel":
        return ParallelTopology(n=n, drive=drive)
    raise DomainError(f"unknown shorthand topology {kind!r}")
