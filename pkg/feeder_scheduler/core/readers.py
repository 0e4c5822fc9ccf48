"""The :mod:`~feeder_scheduler.core.readers` module provides the function
:func:`~feeder_scheduler.core.readers.load_to_dataarray`, which is used to load
historical profile data from a file and convert it into a :class:`~xarray.DataArray`
with dimensions ``("day", "state")``. Each row of the array is one recorded day and each
column one system state, holding a multiplier normalised against the rated capacity
(SPV, WT) or the peak demand (load).

The module also supports the registration of different reader functions, used to convert
files in different storage formats into a ``DataArray``. The
:func:`~feeder_scheduler.core.readers.load_to_dataarray` function automatically uses an
appropriate reader based on the file suffix.

The FILE_FORMAT_REGISTRY
========================

The :attr:`~feeder_scheduler.core.readers.FILE_FORMAT_REGISTRY` is used to register a
set of known file formats. New file format readers are made available using the
:func:`~feeder_scheduler.core.readers.register_file_format_loader` decorator, which
needs to specify the file formats supported (as a tuple of file suffixes) and then
decorates a function that returns a :class:`~xarray.DataArray`. For example:

.. code-block:: python

    @register_file_format_loader(('.parquet',))
    def new_function_to_load_parquet_data(...):
        # code to turn a parquet file into a data array

Two readers are provided:

* ``.csv``: one row per day, one column per state. An optional ``day`` column is used
  as the day index and an optional ``month`` column is kept as a tag on each day.
* ``.nc``: a NetCDF file holding a variable with ``day`` and ``state`` dimensions.
"""  # noqa: D205, D415

from collections.abc import Callable
from pathlib import Path

import numpy as np
import pandas as pd
from xarray import DataArray, load_dataset

from feeder_scheduler.core.logger import LOGGER

FILE_FORMAT_REGISTRY: dict[str, Callable] = {}
"""A registry for different file format loaders

This dictionary maps file format suffixes onto a function that allows the data to be
loaded. The loader function should have the following signature:

.. code-block:: python

    func(file: Path, var_name: str) -> DataArray

"""

PROFILE_DIMS: tuple[str, str] = ("day", "state")
"""The dimensions of a historical profile array."""


def register_file_format_loader(file_types: tuple[str, ...] | str) -> Callable:
    """Adds a data loader function to the data loader registry.

    Args:
        file_types: A tuple of strings giving the file suffixes that the function can
            load.
    """

    def decorator_file_format_loader(func: Callable) -> Callable:
        if isinstance(file_types, str):
            _file_types: tuple[str, ...] = (file_types,)
        else:
            _file_types = file_types

        for this_ft in _file_types:
            if this_ft in FILE_FORMAT_REGISTRY:
                LOGGER.debug(
                    "Replacing existing data loader function for %s",
                    this_ft,
                )
            else:
                LOGGER.debug(
                    "Adding data loader function for %s",
                    this_ft,
                )

            FILE_FORMAT_REGISTRY[this_ft] = func

        return func

    return decorator_file_format_loader


@register_file_format_loader(file_types=(".csv",))
def load_csv(file: Path, var_name: str) -> DataArray:
    """Loads a historical profile from a CSV file.

    Args:
        file: A Path for a CSV file with one row per day.
        var_name: The name given to the returned DataArray.

    Raises:
        FileNotFoundError: with bad file path names.
        ValueError: if the file is empty, has non-numeric state columns or holds
            missing or non-finite values.
    """

    to_raise: Exception

    try:
        frame = pd.read_csv(file)
    except FileNotFoundError:
        to_raise = FileNotFoundError(f"Data file not found: {file}")
        LOGGER.critical(to_raise)
        raise to_raise
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as err:
        to_raise = ValueError(f"Could not load data from {file}: {err}.")
        LOGGER.critical(to_raise)
        raise to_raise

    if "day" in frame.columns:
        frame = frame.set_index("day")
    month = frame.pop("month") if "month" in frame.columns else None

    if frame.empty or frame.shape[1] == 0:
        to_raise = ValueError(f"Could not load data from {file}: no profile values.")
        LOGGER.critical(to_raise)
        raise to_raise

    try:
        values = frame.to_numpy(dtype=float)
    except ValueError as err:
        to_raise = ValueError(f"Could not load data from {file}: {err}.")
        LOGGER.critical(to_raise)
        raise to_raise

    if not np.all(np.isfinite(values)):
        to_raise = ValueError(f"Missing or non-finite values in {file}")
        LOGGER.critical(to_raise)
        raise to_raise

    coords: dict = {
        "day": np.asarray(frame.index),
        "state": np.arange(values.shape[1]),
    }
    if month is not None:
        coords["month"] = ("day", month.to_numpy())

    return DataArray(values, dims=PROFILE_DIMS, coords=coords, name=var_name)


@register_file_format_loader(file_types=(".nc",))
def load_netcdf(file: Path, var_name: str) -> DataArray:
    """Loads a DataArray from a NetCDF file.

    Args:
        file: A Path for a NetCDF file containing the variable to load.
        var_name: A string providing the name of the variable in the file.

    Raises:
        FileNotFoundError: with bad file path names.
        ValueError: if the file data is not readable or the variable does not have day
            and state dimensions.
        KeyError: if the named variable is not present in the data.
    """

    to_raise: Exception

    try:
        dataset = load_dataset(file)
    except FileNotFoundError:
        to_raise = FileNotFoundError(f"Data file not found: {file}")
        LOGGER.critical(to_raise)
        raise to_raise
    except ValueError as err:
        to_raise = ValueError(f"Could not load data from {file}: {err}.")
        LOGGER.critical(to_raise)
        raise to_raise

    if var_name not in dataset:
        to_raise = KeyError(f"Variable {var_name} not found in {file}")
        LOGGER.critical(to_raise)
        raise to_raise

    darray = dataset[var_name]
    if set(darray.dims) != set(PROFILE_DIMS):
        to_raise = ValueError(
            f"Variable {var_name} in {file} must have dimensions day and state"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    return darray.transpose(*PROFILE_DIMS)


def load_to_dataarray(
    file: Path,
    var_name: str,
) -> DataArray:
    """Loads historical profile data from a file into a DataArray.

    The function takes a path to a file format supported in the
    :attr:`~feeder_scheduler.core.readers.FILE_FORMAT_REGISTRY` and uses the
    appropriate data loader function.

    Args:
        file: A Path for the file containing the variable to load.
        var_name: A string providing the name of the variable in the file.

    Raises:
        ValueError: if there is no loader provided for the file format.
    """

    file_type = file.suffix

    if file_type not in FILE_FORMAT_REGISTRY:
        to_raise = ValueError(f"No file format loader provided for {file_type}")
        LOGGER.critical(to_raise)
        raise to_raise

    LOGGER.info("Loading variable '%s' from file: %s", var_name, file)
    loader = FILE_FORMAT_REGISTRY[file_type]
    value = loader(file, var_name)

    return value
