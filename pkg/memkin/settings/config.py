import json
import os
from pathlib import Path
from typing import Optional, Union

import psutil

from .types import MemkinConfig

DEFAULT_CONFIG_PATH = Path(__file__).parent / "defaults.config.json"
THREADS_ENV_VAR = "MEMKIN_THREADS"


def load_config(user_config_path: Optional[Union[str, Path]] = None) -> MemkinConfig:
    """
    Load the packaged defaults and overlay the top-level keys of a user JSON file.

    Parameters:
    - user_config_path (str | Path, optional): path to a JSON file; ignored when it does not exist

    Returns:
    - MemkinConfig: the merged configuration

    Example:
    >> config = load_config("my.config.json")
    >> config["montecarlo"]["trials"]
    """
    with open(DEFAULT_CONFIG_PATH, "r") as file:
        config = json.load(file)

    if user_config_path and Path(user_config_path).exists():
        with open(user_config_path, "r") as file:
            user_config = json.load(file)
        for key in user_config:
            config[key] = user_config[key]

    return config


def resolve_thread_count(configured: Optional[int] = None) -> int:
    """Worker count for ensemble runs from MEMKIN_THREADS, the configured value or the CPU count."""
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        try:
            threads = int(env_value)
        except ValueError:
            raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {env_value!r}")
    elif configured:
        threads = int(configured)
    else:
        threads = psutil.cpu_count(logical=True) or 1
    return max(1, threads)
