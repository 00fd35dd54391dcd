from .rates import (
    MAX_RATE,
    aptm_rate,
    rate_off_on,
    rate_on_off,
    resistance,
    switching_rate,
    tau_of_voltage,
)
from .sampling import fastest_corner_model, sample_params, slowest_corner_model
from .types import (
    APTMModel,
    DeviceModel,
    DeviceState,
    ParamSpread,
    PoissonExpModel,
    build_model,
    build_spread,
)
