from .config import load_config, resolve_thread_count
from .types import MemkinConfig, MonteCarloConfig, SolverConfig
