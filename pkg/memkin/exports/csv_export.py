"""
csv_export.py
-------------
CSV outputs of the command line.

Every file has a header row and no index column. Floats are written with 17
significant digits, so the same inputs and seed give byte-identical files.

Files:
- switch_times.csv: trial, device_0..device_{N-1}, network_time
- histogram.csv: bin_lo, bin_hi, count
- master.csv: t, p_<bits> per state or p_level_<m> per level, density, avg_resistance_<i>
- iv_raw.csv: cycle, sample, t, v, i
- iv_avg.csv: sample, v, i
- iv_events.csv: t, v, device, direction
- corr.csv: t, K_<i>_<j> and SE_<i>_<j> per pair (or K_avg and SE_avg), K_analytic when known
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import xarray as xr

FLOAT_FORMAT = "%.17g"


def write_dataframe(df: pd.DataFrame, folder: Union[str, Path], file_name: str) -> Path:
    """
    Write a DataFrame as CSV under `folder`, creating it when missing.

    Returns:
    - Path: the written file

    Example:
    >> write_dataframe(ensemble.to_dataframe(), "output", "switch_times.csv")
    """
    folder = Path(folder)
    folder.mkdir(parents=True, exist_ok=True)
    path = folder / file_name
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    return path


def state_label(state: int, n: int) -> str:
    """Bits of a state with device 0 first, e.g. "10" when only device 0 is ON."""
    return format(int(state), f"0{n}b")[::-1]


def master_dataframe(
    solution: xr.Dataset, density: xr.DataArray, resistances: Sequence[xr.DataArray]
) -> pd.DataFrame:
    n = solution.attrs["n_devices"]
    columns = {"t": solution.time.values}
    if solution.attrs["representation"] == "reduced":
        for level in solution.level.values:
            columns[f"p_level_{int(level)}"] = solution.probability.sel(level=level).values
    else:
        for state in solution.state.values:
            columns[f"p_{state_label(state, n)}"] = solution.probability.sel(state=state).values
    columns["density"] = np.asarray(density.values)
    for device, resistance in enumerate(resistances):
        columns[f"avg_resistance_{device}"] = np.asarray(resistance.values)
    return pd.DataFrame(columns)


def correlation_dataframe(
    t: np.ndarray,
    estimates: Dict[str, Tuple[np.ndarray, np.ndarray]],
    analytic: Optional[np.ndarray] = None,
) -> pd.DataFrame:
    """`estimates` maps a column suffix ("0_1" or "avg") to (values, standard errors)."""
    columns = {"t": t}
    for suffix, (values, errors) in estimates.items():
        columns[f"K_{suffix}"] = values
        columns[f"SE_{suffix}"] = errors
    if analytic is not None:
        columns["K_analytic"] = analytic
    return pd.DataFrame(columns)


def export_iv(result, folder: Union[str, Path]) -> List[Path]:
    return [
        write_dataframe(result.raw_dataframe(), folder, "iv_raw.csv"),
        write_dataframe(result.average_dataframe(), folder, "iv_avg.csv"),
        write_dataframe(result.events_dataframe(), folder, "iv_events.csv"),
    ]
