"""This submodule contains the dataclass holding core constants shared across the
scheduler modules.

Fixed conversion factors are defined as class variables, which prevents them being
changed by user specified configuration.
"""  # noqa: D205, D415

from dataclasses import dataclass
from typing import ClassVar

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class CoreConsts(ConstantsDataclass):
    """Core constants for use across the scheduler modules."""

    soc_tolerance: float = 1e-9
    """Slack allowed when checking a state of charge against its band, [fraction]."""

    minutes_per_hour: ClassVar[float] = 60.0
    """Conversion factor from hours to minutes."""
