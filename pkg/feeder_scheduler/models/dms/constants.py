"""The :mod:`~feeder_scheduler.models.dms.constants` module contains the settings of
the decision mechanism system.
"""  # noqa: D205, D415

from dataclasses import dataclass

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class DmsConsts(ConstantsDataclass):
    """Dataclass to store all constants for the `dms` module."""

    customer_markup: float = 1.05
    """Ratio of the customer price to the grid price when no customer price is given."""

    clamp_remainder: bool = True
    """Limit the final partial state allocation to the battery power rating.

    The remainder of the usable energy is scaled by the battery efficiency, which can
    push it above the rating when the remainder is close to a full state.
    """
