"""The :mod:`~feeder_scheduler.models.economics.constants` module contains the
accounting tolerances and reporting precision of the day report.
"""  # noqa: D205, D415

from dataclasses import dataclass

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class EconomicsConsts(ConstantsDataclass):
    """Dataclass to store all constants for the `economics` module."""

    energy_tolerance: float = 1e-3
    """Allowed imbalance of the day energy equation, [kWh]."""

    currency_tolerance: float = 1e-6
    """Allowed mismatch between the daily profit and the economic equation, [$]."""

    currency_decimals: int = 2
    """Decimal places used when reporting currency values."""

    energy_decimals: int = 3
    """Decimal places used when reporting energy values."""
