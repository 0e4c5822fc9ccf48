"""The :mod:`~feeder_scheduler.models.optimizer.constants` module contains the swarm
search settings and the penalty weights applied to network constraint violations.
"""  # noqa: D205, D415

from dataclasses import dataclass

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class OptimizerConsts(ConstantsDataclass):
    """Dataclass to store all constants for the `optimizer` module."""

    population: int = 10
    """Number of members in the herd."""

    generations: int = 100
    """Number of generations searched for each state."""

    inertia: float = 0.72
    """Share of its previous move each member keeps."""

    exploitation: float = 1.49
    """Pull of each member towards its own best position."""

    exploration: float = 1.49
    """Pull of each member towards the herd best position."""

    velocity_limit: float = 0.2
    """Largest move in one generation, as a fraction of the search box width."""

    restart_window: int = 25
    """Generations without improvement after which a member is re-seeded."""

    voltage_penalty: float = 1e3
    """Penalty per p.u. of voltage outside the limits, [$/p.u.]."""

    current_penalty: float = 1e3
    """Penalty per 100 A of line overload, [$/100 A]."""

    reverse_power_penalty: float = 1e3
    """Penalty per kW fed back through the substation, [$/kW]."""
