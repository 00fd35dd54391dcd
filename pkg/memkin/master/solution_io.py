"""
solution_io.py
--------------
Input and output of master-equation solutions.

Solutions are xarray Datasets and are stored as NetCDF (".nc") or Zarr
(".zarr"). Reading loads the data into memory so the file can be closed.

Functions:
- read_solution(file_path: Union[str, Path]) -> xr.Dataset
- write_solution(solution: xr.Dataset, file_path: Union[str, Path], file_name: str = "master_solution",
  file_type: str = "nc", overwrite: bool = True) -> Path

Example:
    >> write_solution(solution, "/path/to/save", "series10", "zarr")
    >> solution = read_solution("/path/to/save/series10.zarr")
"""

from pathlib import Path
from typing import Union

import xarray as xr

SUPPORTED_TYPES = ["nc", "zarr"]


def read_solution(file_path: Union[str, Path]) -> xr.Dataset:
    """
    Read and return a solution Dataset from a .nc or .zarr path.

    Raises:
    - FileNotFoundError: If the file does not exist.
    - ValueError: If the file has an unsupported format.

    Example:
    >> solution = read_solution("/path/to/series10.nc")
    """
    file_path = Path(file_path)

    if not file_path.exists():
        raise FileNotFoundError(f"File does not exist: {file_path}")

    if file_path.suffix == ".nc":
        with xr.open_dataset(file_path) as ds:
            return ds.load()
    if file_path.suffix == ".zarr":
        with xr.open_zarr(file_path) as ds:
            return ds.load()
    raise ValueError(f"Unsupported file format: {file_path.suffix}")


def write_solution(
    solution: xr.Dataset,
    file_path: Union[str, Path],
    file_name: str = "master_solution",
    file_type: str = "nc",
    overwrite: bool = True,
) -> Path:
    """
    Save a solution Dataset under a folder with a given file name and type.

    Parameters:
    - solution (xr.Dataset): The solution to save.
    - file_path (Union[str, Path]): The folder to save into; created when missing.
    - file_name (str, optional): File name, with or without suffix.
    - file_type (str, optional): 'nc' or 'zarr', used when the name has no suffix. Defaults to 'nc'.
    - overwrite (bool, optional): Whether to replace an existing file. Defaults to True.

    Returns:
    - Path: the path of the written file

    Raises:
    - TypeError: If the input is not an xr.Dataset.
    - NotADirectoryError: If file_path exists and is not a directory.
    - ValueError: For unsupported file types.

    Example:
    >> write_solution(solution, "/path/to/save", "series10", "nc")
    """
    if not isinstance(solution, xr.Dataset):
        raise TypeError("Expected a xarray Dataset")

    path = Path(file_path)
    if path.exists() and not path.is_dir():
        raise NotADirectoryError(f"Path exists but is not a directory: {path}")
    path.mkdir(parents=True, exist_ok=True)

    if "." not in file_name:
        if file_type not in SUPPORTED_TYPES:
            raise ValueError(f"File type has to be one of {SUPPORTED_TYPES}")
        file_name = f"{file_name}.{file_type}"
    elif file_name.rsplit(".", 1)[1] not in SUPPORTED_TYPES:
        raise ValueError(f"File name provided has unsupported format: {file_name}")

    full_path = path / file_name
    if full_path.exists() and not overwrite:
        return full_path

    if full_path.suffix == ".nc":
        solution.to_netcdf(full_path)
    else:
        solution.to_zarr(full_path, mode="w")
    return full_path
