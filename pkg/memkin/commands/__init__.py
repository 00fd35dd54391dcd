from .correlate import run_correlate
from .iv import run_iv
from .master import run_master, solve_scenario
from .mc import run_mc
from .scenario import Scenario, build_scenario
