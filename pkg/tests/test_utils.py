import numpy as np
import xarray as xr

from memkin.utils import add_metadata_to_dataset, dict_to_formatted_list


def test_dict_to_formatted_list():
    sample_dict = {"method": "RK45", "rtol": 1e-9, "max_devices": 20}
    expected_output = ["method=RK45", "rtol=1e-09", "max_devices=20"]
    assert dict_to_formatted_list(sample_dict) == expected_output


def test_add_metadata_to_dataset():
    ds = xr.Dataset({"probability": (("time",), np.ones(3))}, coords={"time": np.arange(3.0)})
    metadata = {"solver": {"method": "RK45", "rtol": 1e-9}, "rate_ceiling": None, "n_devices": 2}
    result = add_metadata_to_dataset(ds, metadata)
    assert result is ds
    assert ds.attrs["solver"] == "method=RK45; rtol=1e-09"
    assert ds.attrs["rate_ceiling"] == "none"
    assert ds.attrs["n_devices"] == 2
