"""This submodule contains the dataclasses used to generate the core components shared
by the scheduler modules: the timing of the scheduling day and the core constants.
Single instances are created from a validated configuration and handed down to the
model code.
"""  # noqa: D205, D415

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

from pint import Quantity
from pint.errors import DimensionalityError, UndefinedUnitError

from feeder_scheduler.core.config import Config
from feeder_scheduler.core.constants import CoreConsts
from feeder_scheduler.core.constants_loader import load_constants
from feeder_scheduler.core.exceptions import ConfigurationError
from feeder_scheduler.core.logger import LOGGER


@dataclass
class CoreComponents:
    """Core scheduler components.

    This dataclass takes a validated configuration and builds the components needed by
    every module of a run.
    """

    state_timing: StateTiming = field(init=False)
    """The system state timing for the scheduling day."""
    core_constants: CoreConsts = field(init=False)
    """The core constants definitions for the run."""
    seed: int = field(init=False)
    """The seed used for every random generator in the run."""
    config: InitVar[Config]
    """A validated configuration."""

    def __post_init__(self, config: Config) -> None:
        """Populate the core components from the config."""
        self.state_timing = StateTiming(config=config)
        self.core_constants = load_constants(config, "core", "CoreConsts")
        self.seed = config["core"]["seed"]


@dataclass
class StateTiming:
    """System state timing details.

    The scheduling day is split into ``n_states`` system states of equal duration. The
    duration is given as a string in the ``core.timing`` section and parsed using
    :mod:`pint`, so ``"1 hour"``, ``"60 minutes"`` and ``"30 min"`` are all accepted.

    Raises:
        ConfigurationError: If the duration cannot be parsed as a time or the states
            run past a single day.
    """

    dt: float = field(init=False)
    """The duration of a state in hours."""
    state_duration_quantity: Quantity = field(init=False)
    """The configured state duration as a pint Quantity."""
    n_states: int = field(init=False)
    """The number of states in the scheduling day."""
    labels: list[str] = field(init=False)
    """The state start times as ``HH:MM`` strings."""
    config: InitVar[Config]
    """A validated configuration."""

    def __post_init__(self, config: Config) -> None:
        """Populate the ``StateTiming`` instance from a validated configuration.

        Args:
            config: A Config instance.
        """

        timing = config["core"]["timing"]
        value = timing["state_duration"]

        try:
            self.state_duration_quantity = Quantity(value).to("hours")
        except (DimensionalityError, UndefinedUnitError, AttributeError):
            to_raise = ConfigurationError(
                f"Invalid units for core.timing.state_duration: {value}"
            )
            LOGGER.error(to_raise)
            raise to_raise

        self.dt = float(self.state_duration_quantity.magnitude)
        self.n_states = int(timing["n_states"])

        if self.dt <= 0:
            to_raise = ConfigurationError("State duration must be positive")
            LOGGER.error(to_raise)
            raise to_raise

        if self.dt * self.n_states > 24 + 1e-9:
            to_raise = ConfigurationError(
                f"{self.n_states} states of {value} run past a single day"
            )
            LOGGER.error(to_raise)
            raise to_raise

        minutes = [
            round(idx * self.dt * CoreConsts.minutes_per_hour)
            for idx in range(self.n_states)
        ]
        self.labels = [f"{mins // 60:02d}:{mins % 60:02d}" for mins in minutes]

        LOGGER.info(
            "Scheduling day: %i states of %s hours", self.n_states, round(self.dt, 6)
        )
