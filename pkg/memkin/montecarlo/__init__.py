from .ensemble import draw_models, resolve_step_and_horizon, run_ensemble
from .event_driven import simulate_event_driven
from .fixed_step import default_horizon, default_time_step, simulate_fixed_step
from .iv_sweep import IVSweepResult, iv_sweep, loop_area
from .records import Ensemble, EnsembleConfig, ParamMode, Scheme, TrialRecord
from .responses import StateResponses
from .streams import parameter_stream, trial_stream
