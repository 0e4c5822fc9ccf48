"""The :mod:`~feeder_scheduler.core.data` module handles the storage of the per-state
inputs of a scheduling day and the loading of historical profile folders.

The DayProfiles class
=====================

The :class:`~feeder_scheduler.core.data.DayProfiles` class stores the synthesized SPV,
WT and load multipliers and the grid and customer price vectors for each system state.
It behaves like a dictionary, so variables can be retrieved and set using
``profiles['grid_price']``, but it checks that every variable added has one finite
value per state. All data is held in an :class:`~xarray.Dataset` available as the
:attr:`~feeder_scheduler.core.data.DayProfiles.data` attribute, which is also what
:meth:`~feeder_scheduler.core.data.DayProfiles.save_to_netcdf` writes out.

Historical profile folders
==========================

A profile folder holds one file per profile kind, named ``spv``, ``wt`` and ``load``
with any suffix supported by :mod:`~feeder_scheduler.core.readers`, for example:

.. code-block:: text

    profiles/
        spv.csv
        wt.csv
        load.nc

:func:`~feeder_scheduler.core.data.load_history_folder` loads such a folder.
"""  # noqa: D205, D415

from collections.abc import Sequence
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike
from xarray import DataArray, Dataset

from feeder_scheduler.core.exceptions import InputError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.core.readers import FILE_FORMAT_REGISTRY, load_to_dataarray
from feeder_scheduler.core.utils import check_outfile

PROFILE_KINDS: tuple[str, ...] = ("spv", "wt", "load")
"""The historical profile kinds making up a profile folder."""

DAY_VARIABLES: tuple[str, ...] = PROFILE_KINDS + ("grid_price", "customer_price")
"""The variables required for a complete scheduling day."""


class DayProfiles:
    """The per-state inputs of a scheduling day.

    Args:
        labels: The state start time labels, one per system state.
    """

    def __init__(self, labels: Sequence[str]) -> None:
        self.data = Dataset(
            coords={"state": np.arange(len(labels)), "label": ("state", list(labels))}
        )
        """The :class:`~xarray.Dataset` used to store the variables."""

    def __repr__(self) -> str:
        """Returns a representation of a DayProfiles instance."""

        if self.data.data_vars:
            return f"DayProfiles: {list(self.data.data_vars)}"

        return "DayProfiles: no variables loaded"

    @property
    def n_states(self) -> int:
        """The number of system states."""
        return self.data.sizes["state"]

    def __setitem__(self, key: str, value: ArrayLike) -> None:
        """Add a per-state variable.

        Args:
            key: The name to store the data under
            value: One value per system state

        Raises:
            ValueError: when the values do not have one finite entry per state.
        """

        values = np.asarray(value, dtype=float)

        if values.shape != (self.n_states,):
            to_raise = ValueError(
                f"Variable {key} has shape {values.shape}, "
                f"expected ({self.n_states},)"
            )
            LOGGER.critical(to_raise)
            raise to_raise

        if not np.all(np.isfinite(values)):
            to_raise = ValueError(f"Variable {key} contains non-finite values")
            LOGGER.critical(to_raise)
            raise to_raise

        if key not in self.data.data_vars:
            LOGGER.info(f"Adding day profile for '{key}'")
        else:
            LOGGER.info(f"Replacing day profile for '{key}'")

        self.data[key] = DataArray(values, dims=("state",))

    def __getitem__(self, key: str) -> DataArray:
        """Get a given variable from a DayProfiles instance.

        Raises:
            KeyError: if the variable is not present
        """

        return self.data[key]

    def __contains__(self, key: str) -> bool:
        """Check if a given variable is present in a DayProfiles instance."""

        return key in self.data

    def values(self, key: str) -> np.ndarray:
        """Return the values of a variable as a numpy array."""

        return self.data[key].to_numpy()

    def check_complete(self) -> None:
        """Check that all variables needed to schedule a day are present.

        Raises:
            InputError: if any of the day variables are missing.
        """

        missing = [var for var in DAY_VARIABLES if var not in self.data]
        if missing:
            to_raise = InputError(f"Day profiles missing: {', '.join(missing)}")
            LOGGER.critical(to_raise)
            raise to_raise

    def save_to_netcdf(
        self, output_file_path: Path, extra: dict[str, DataArray] | None = None
    ) -> None:
        """Save the day profiles and optional extra variables as a NetCDF file.

        Args:
            output_file_path: Path location to save the file.
            extra: Additional arrays sharing the ``state`` dimension, such as the
                optimised schedule.
        """

        check_outfile(output_file_path)

        dataset = self.data.copy()
        for name, darray in (extra or {}).items():
            dataset[name] = darray

        dataset.to_netcdf(output_file_path, engine="netcdf4")
        LOGGER.info("Saving day profiles to: %s", output_file_path)


def load_history_folder(folder: Path) -> dict[str, DataArray]:
    """Load the historical profiles stored in a folder.

    Args:
        folder: A folder holding one ``spv``, ``wt`` and ``load`` file.

    Returns:
        A dictionary of ``("day", "state")`` arrays keyed by profile kind.

    Raises:
        InputError: if the folder or a profile file is missing, or a file cannot be
            read.
    """

    if not folder.is_dir():
        to_raise = InputError(f"profile folder not found: {folder}")
        LOGGER.critical(to_raise)
        raise to_raise

    histories: dict[str, DataArray] = {}

    for kind in PROFILE_KINDS:
        candidates = [
            folder / f"{kind}{suffix}"
            for suffix in FILE_FORMAT_REGISTRY
            if (folder / f"{kind}{suffix}").is_file()
        ]
        if not candidates:
            to_raise = InputError(f"profile file not found: {folder / kind}")
            LOGGER.critical(to_raise)
            raise to_raise

        try:
            histories[kind] = load_to_dataarray(file=candidates[0], var_name=kind)
        except (ValueError, KeyError) as excep:
            raise InputError(str(excep)) from excep

    return histories
