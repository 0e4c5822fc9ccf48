"""Testing the profile data readers."""

from contextlib import nullcontext as does_not_raise
from logging import CRITICAL, INFO

import numpy as np
import pytest
from xarray import DataArray

from tests.conftest import log_check


def test_file_format_registry():
    """Test that the CSV and NetCDF loaders are registered."""
    from feeder_scheduler.core.readers import (
        FILE_FORMAT_REGISTRY,
        load_csv,
        load_netcdf,
    )

    assert FILE_FORMAT_REGISTRY[".csv"] is load_csv
    assert FILE_FORMAT_REGISTRY[".nc"] is load_netcdf


def test_register_file_format_loader(caplog):
    """Test that a new loader is added to the registry."""
    from logging import DEBUG

    from feeder_scheduler.core.readers import (
        FILE_FORMAT_REGISTRY,
        register_file_format_loader,
    )

    @register_file_format_loader(file_types=".tsv")
    def tsv_loader(file, var_name):
        return None

    try:
        assert FILE_FORMAT_REGISTRY[".tsv"] is tsv_loader
        log_check(caplog, ((DEBUG, "Adding data loader function for .tsv"),))
    finally:
        del FILE_FORMAT_REGISTRY[".tsv"]


@pytest.mark.parametrize(
    "filename,raises,shape,months",
    [
        pytest.param("history_spv.csv", does_not_raise(), (3, 4), [5, 5, 6], id="tags"),
        pytest.param(
            "history_no_day.csv", does_not_raise(), (2, 4), None, id="no_tags"
        ),
        pytest.param(
            "history_missing_value.csv",
            pytest.raises(ValueError, match="Missing or non-finite values"),
            None,
            None,
            id="missing_value",
        ),
        pytest.param(
            "history_text_value.csv",
            pytest.raises(ValueError, match="Could not load data"),
            None,
            None,
            id="text_value",
        ),
        pytest.param(
            "history_no_states.csv",
            pytest.raises(ValueError, match="no profile values"),
            None,
            None,
            id="no_states",
        ),
        pytest.param(
            "history_absent.csv",
            pytest.raises(FileNotFoundError),
            None,
            None,
            id="absent",
        ),
    ],
)
def test_load_csv(shared_datadir, filename, raises, shape, months):
    """Test the loading of CSV profiles."""
    from feeder_scheduler.core.readers import load_csv

    with raises:
        darray = load_csv(shared_datadir / filename, "spv")

        assert isinstance(darray, DataArray)
        assert darray.dims == ("day", "state")
        assert darray.shape == shape
        assert darray.name == "spv"
        if months is None:
            assert "month" not in darray.coords
        else:
            np.testing.assert_array_equal(darray["month"].to_numpy(), months)


def test_load_netcdf(tmp_path):
    """Test the loading of NetCDF profiles, with dimensions in either order."""
    from feeder_scheduler.core.readers import load_netcdf

    values = np.arange(12, dtype=float).reshape(4, 3) / 12
    DataArray(values, dims=("state", "day"), name="load").to_dataset().to_netcdf(
        tmp_path / "load.nc"
    )

    darray = load_netcdf(tmp_path / "load.nc", "load")

    assert darray.dims == ("day", "state")
    np.testing.assert_allclose(darray.to_numpy(), values.T)


@pytest.mark.parametrize(
    "dims,var_name,raises,message",
    [
        pytest.param(
            ("day", "hour"),
            "load",
            pytest.raises(ValueError),
            "must have dimensions day and state",
            id="bad_dims",
        ),
        pytest.param(
            ("day", "state"),
            "spv",
            pytest.raises(KeyError),
            "Variable spv not found",
            id="missing_var",
        ),
    ],
)
def test_load_netcdf_errors(caplog, tmp_path, dims, var_name, raises, message):
    """Test the NetCDF loader errors."""
    from feeder_scheduler.core.readers import load_netcdf

    DataArray(np.ones((2, 3)), dims=dims, name="load").to_dataset().to_netcdf(
        tmp_path / "load.nc"
    )

    with raises:
        load_netcdf(tmp_path / "load.nc", var_name)

    log_check(caplog, ((CRITICAL, message),))


@pytest.mark.parametrize(
    "filename,raises,exp_log",
    [
        pytest.param(
            "history_spv.csv",
            does_not_raise(),
            ((INFO, "Loading variable 'spv' from file:"),),
            id="csv",
        ),
        pytest.param(
            "history_spv.xlsx",
            pytest.raises(ValueError),
            ((CRITICAL, "No file format loader provided for .xlsx"),),
            id="unknown_suffix",
        ),
    ],
)
def test_load_to_dataarray(caplog, shared_datadir, filename, raises, exp_log):
    """Test the dispatch of loaders on the file suffix."""
    from feeder_scheduler.core.readers import load_to_dataarray

    with raises:
        darray = load_to_dataarray(shared_datadir / filename, "spv")
        assert darray.shape == (3, 4)

    log_check(caplog, exp_log)
