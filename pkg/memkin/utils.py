from typing import Dict, List, Union

import xarray as xr


def dict_to_formatted_list(d: Dict[str, Union[int, float, str, None]]) -> List[str]:
    """Convert a dictionary to a list of formatted strings."""
    return [f"{key}={value}" for key, value in d.items()]


def add_metadata_to_dataset(ds: xr.Dataset, metadata: Dict) -> xr.Dataset:
    """
    Attaches the provided metadata to the given dataset as global attributes.

    Dictionaries are flattened to "key=value" strings joined by "; " and None
    becomes "none", so the attributes survive a round trip through NetCDF.

    Parameters:
    - ds (xarray.Dataset): dataset to annotate
    - metadata (dict): dictionary of metadata

    Returns:
    - xarray.Dataset: dataset with the metadata stored as global attributes

    Example:
        >>> add_metadata_to_dataset(solution, metadata={"solver": {"method": "RK45", "rtol": 1e-9}})
    Expected Output:
    A dataset with attrs["solver"] == "method=RK45; rtol=1e-09"
    """
    for k, v in metadata.items():
        if isinstance(v, dict):
            v = "; ".join(dict_to_formatted_list(v))
        elif v is None:
            v = "none"
        ds.attrs[k] = v
    return ds
