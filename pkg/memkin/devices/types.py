"""
types.py
--------
Device models and related value types.

Classes:
- `DeviceState`: binary device state, OFF=0 / ON=1.
- `PoissonExpModel`: exponential voltage dependence of the switching time,
  tau(V) = tau0 * exp(-V / V0), with separate parameters per direction.
- `APTMModel`: threshold rate law with power-law overdrive.
- `ParamSpread`: closed intervals for drawing tau0 and V0 of non-identical devices.

All quantities are SI: seconds, volts, ohms, hertz.
"""

from enum import IntEnum
from typing import Annotated, Any, Dict, Literal, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveFloat,
    TypeAdapter,
    ValidationError,
    model_validator,
)

from memkin.errors import DomainError


class DeviceState(IntEnum):
    OFF = 0
    ON = 1

    def flipped(self) -> "DeviceState":
        return DeviceState(1 - self.value)


class _FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False, extra="forbid")


class PoissonExpModel(_FrozenModel):
    kind: Literal["poisson"] = "poisson"
    tau0: PositiveFloat
    v0: PositiveFloat
    tau1: PositiveFloat
    v1: PositiveFloat
    r_on: PositiveFloat
    r_off: PositiveFloat

    @model_validator(mode="after")
    def check_resistance_levels(self):
        if self.r_off <= self.r_on:
            raise ValueError(f"r_off ({self.r_off}) must exceed r_on ({self.r_on})")
        return self


class APTMModel(_FrozenModel):
    kind: Literal["aptm"] = "aptm"
    k_on: PositiveFloat
    k_off: PositiveFloat
    v_on: PositiveFloat
    v_off: float = Field(lt=0)
    alpha_on: PositiveFloat
    alpha_off: PositiveFloat
    r_on: PositiveFloat
    r_off: PositiveFloat

    @model_validator(mode="after")
    def check_resistance_levels(self):
        if self.r_off <= self.r_on:
            raise ValueError(f"r_off ({self.r_off}) must exceed r_on ({self.r_on})")
        return self


DeviceModel = Annotated[Union[PoissonExpModel, APTMModel], Field(discriminator="kind")]

_device_model_adapter = TypeAdapter(DeviceModel)


class ParamSpread(_FrozenModel):
    tau0_range: Tuple[PositiveFloat, PositiveFloat]
    v0_range: Tuple[PositiveFloat, PositiveFloat]

    @model_validator(mode="after")
    def check_ordered(self):
        for name, (lower, upper) in (("tau0_range", self.tau0_range), ("v0_range", self.v0_range)):
            if lower > upper:
                raise ValueError(
                    f"{name} is empty: lower bound {lower} exceeds upper bound {upper}"
                )
        return self

    @property
    def slowest_corner(self) -> Dict[str, float]:
        """Largest tau0 and V0: the slowest forward switching the spread can produce."""
        return {"tau0": self.tau0_range[1], "v0": self.v0_range[1]}

    @property
    def fastest_corner(self) -> Dict[str, float]:
        return {"tau0": self.tau0_range[0], "v0": self.v0_range[0]}


def build_model(parameters: Dict[str, Any]) -> Union[PoissonExpModel, APTMModel]:
    """
    Validate a parameter mapping into a device model; `kind` defaults to "poisson".

    Raises:
    - DomainError: for missing, non-positive or non-finite parameters.

    Example:
    >> build_model({"tau0": 3e5, "v0": 0.05, "tau1": 3e5, "v1": 0.05, "r_on": 1e3, "r_off": 1e4})
    """
    parameters = {"kind": "poisson", **parameters}
    try:
        return _device_model_adapter.validate_python(parameters)
    except ValidationError as e:
        raise DomainError(f"Invalid device model: {e}") from e


def build_spread(tau0_range, v0_range) -> ParamSpread:
    try:
        return ParamSpread(tau0_range=tuple(tau0_range), v0_range=tuple(v0_range))
    except ValidationError as e:
        raise DomainError(f"Invalid parameter spread: {e}") from e
