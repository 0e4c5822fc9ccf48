"""The :mod:`~feeder_scheduler.models.uncertainty.constants` module contains the
settings of the synthetic day sampler.
"""  # noqa: D205, D415

from dataclasses import dataclass

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class UncertaintyConsts(ConstantsDataclass):
    """Dataclass to store all constants for the `uncertainty` module."""

    projection_passes: int = 50
    """Maximum number of scaling passes used to bring a day mean into its bounds."""

    mean_tolerance: float = 1e-12
    """Slack allowed on the day mean bounds."""
