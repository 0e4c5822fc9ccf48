"""The :mod:`~feeder_scheduler.models.optimizer.swarm` submodule provides a bounded
herd swarm search that maximises an objective over a box.

Each member of the herd carries a position, a velocity (its memory of the last move)
and the best position it has found. Every generation, members move by keeping part of
their last move, exploiting their own best position and exploring towards the herd
best position:

.. math::

    v \\leftarrow w v + c_1 r_1 (p - x) + c_2 r_2 (g - x), \\qquad x \\leftarrow x + v

Moves are limited to a fraction of the box width and positions are clipped to the box.
Members that fail to improve their own best for a number of generations are re-seeded
uniformly in the box, while the herd best is kept, so the best fitness never
decreases. The initial herd always holds the lower and upper corners of the box, which
lets linear objectives reach their optimum on a boundary.

The search runs a fixed number of generations. The evaluations of a generation are
independent and can run on a :mod:`dask` threaded scheduler; the herd update waits for
all of them.
"""  # noqa: D205, D415

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import dask
import numpy as np
from numpy.random import SeedSequence, default_rng
from numpy.typing import ArrayLike

from feeder_scheduler.core.exceptions import ConfigurationError, EvaluationError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.optimizer.constants import OptimizerConsts

SCHEDULERS: tuple[str, ...] = ("synchronous", "threads")
"""The dask schedulers available for the evaluations of a generation."""


@dataclass(frozen=True)
class SwarmConfig:
    """The settings of a swarm search."""

    population: int = 10
    """Number of members in the herd."""
    generations: int = 100
    """Number of generations searched."""
    inertia: float = 0.72
    """Share of its previous move each member keeps."""
    exploitation: float = 1.49
    """Pull of each member towards its own best position."""
    exploration: float = 1.49
    """Pull of each member towards the herd best position."""
    velocity_limit: float = 0.2
    """Largest move in one generation, as a fraction of the box width."""
    restart_window: int = 25
    """Generations without improvement after which a member is re-seeded."""
    seed: int | SeedSequence = 0
    """The seed of the random generator."""
    scheduler: str = "synchronous"
    """The dask scheduler used for the evaluations of a generation."""

    def __post_init__(self) -> None:
        problems = []
        if self.population < 2:
            problems.append("population must be at least 2")
        if self.generations < 1:
            problems.append("generations must be at least 1")
        if self.restart_window < 1:
            problems.append("restart window must be at least 1")
        if not 0 < self.velocity_limit <= 1:
            problems.append("velocity limit must lie in (0, 1]")
        if min(self.inertia, self.exploitation, self.exploration) < 0:
            problems.append("coefficients must not be negative")
        if self.scheduler not in SCHEDULERS:
            problems.append(f"unknown scheduler {self.scheduler}")

        if problems:
            to_raise = ConfigurationError(f"Invalid swarm: {'; '.join(problems)}")
            LOGGER.critical(to_raise)
            raise to_raise

    @classmethod
    def from_constants(
        cls,
        consts: OptimizerConsts,
        seed: int | SeedSequence = 0,
        scheduler: str = "synchronous",
    ) -> SwarmConfig:
        """Build the swarm settings from the optimizer constants."""

        return cls(
            population=consts.population,
            generations=consts.generations,
            inertia=consts.inertia,
            exploitation=consts.exploitation,
            exploration=consts.exploration,
            velocity_limit=consts.velocity_limit,
            restart_window=consts.restart_window,
            seed=seed,
            scheduler=scheduler,
        )


@dataclass(frozen=True)
class SwarmResult:
    """The outcome of a swarm search."""

    best: np.ndarray
    """The best position found."""
    fitness: float
    """The objective value at the best position."""
    trace: np.ndarray = field(repr=False)
    """The herd best fitness after the initial herd and after each generation."""
    n_evaluations: int = 0
    """The number of objective evaluations, including discarded ones."""


def _evaluate(
    objective: Callable[[np.ndarray], float],
    positions: np.ndarray,
    scheduler: str,
) -> np.ndarray:
    """Evaluate the herd, replacing non-finite values with -inf."""

    if scheduler == "synchronous":
        values = [objective(position) for position in positions]
    else:
        tasks = [dask.delayed(objective)(position) for position in positions]
        values = list(dask.compute(*tasks, scheduler=scheduler))

    fitness = np.asarray(values, dtype=float)
    bad = ~np.isfinite(fitness)
    if np.any(bad):
        LOGGER.warning("Discarding %i candidates with non-finite fitness", bad.sum())
        fitness[bad] = -np.inf

    return fitness


def swarm_kernel(
    objective: Callable[[np.ndarray], float],
    lower: ArrayLike,
    upper: ArrayLike,
    cfg: SwarmConfig = SwarmConfig(),
) -> SwarmResult:
    """Maximise an objective over a box with a herd swarm search.

    Args:
        objective: The function to maximise, taking a position vector.
        lower: The lower bounds of the box.
        upper: The upper bounds of the box.
        cfg: The swarm settings.

    Raises:
        ValueError: if the bounds are not finite or not ordered.
        EvaluationError: if no candidate has a finite fitness.
    """

    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)

    if (
        lower.shape != upper.shape
        or not np.all(np.isfinite(lower))
        or not np.all(np.isfinite(upper))
        or np.any(lower > upper)
    ):
        to_raise = ValueError("Swarm bounds must be finite, matching and ordered")
        LOGGER.critical(to_raise)
        raise to_raise

    rng = default_rng(cfg.seed)
    width = upper - lower
    v_max = cfg.velocity_limit * width
    n_dim = lower.shape[0]

    positions = rng.uniform(lower, upper, size=(cfg.population, n_dim))
    positions[0] = lower
    positions[1] = upper
    velocity = rng.uniform(-v_max, v_max, size=(cfg.population, n_dim))

    fitness = _evaluate(objective, positions, cfg.scheduler)
    n_evaluations = cfg.population
    own_best = positions.copy()
    own_fitness = fitness.copy()
    stagnation = np.zeros(cfg.population, dtype=int)

    lead = int(np.argmax(own_fitness))
    herd_best = own_best[lead].copy()
    herd_fitness = float(own_fitness[lead])
    trace = [herd_fitness]

    for generation in range(1, cfg.generations + 1):
        r_own = rng.random((cfg.population, n_dim))
        r_herd = rng.random((cfg.population, n_dim))
        velocity = (
            cfg.inertia * velocity
            + cfg.exploitation * r_own * (own_best - positions)
            + cfg.exploration * r_herd * (herd_best - positions)
        )
        velocity = np.clip(velocity, -v_max, v_max)
        positions = np.clip(positions + velocity, lower, upper)

        fitness = _evaluate(objective, positions, cfg.scheduler)
        n_evaluations += cfg.population

        improved = fitness > own_fitness
        own_best[improved] = positions[improved]
        own_fitness[improved] = fitness[improved]
        stagnation = np.where(improved, 0, stagnation + 1)

        lead = int(np.argmax(own_fitness))
        if own_fitness[lead] > herd_fitness:
            herd_best = own_best[lead].copy()
            herd_fitness = float(own_fitness[lead])
        trace.append(herd_fitness)

        restart = stagnation >= cfg.restart_window
        if np.any(restart):
            positions[restart] = rng.uniform(
                lower, upper, size=(int(restart.sum()), n_dim)
            )
            velocity[restart] = 0.0
            stagnation[restart] = 0

        LOGGER.debug("Generation %i: herd best %.6f", generation, herd_fitness)

    if not np.isfinite(herd_fitness):
        to_raise = EvaluationError("Swarm search found no finite fitness")
        LOGGER.critical(to_raise)
        raise to_raise

    return SwarmResult(
        best=herd_best,
        fitness=herd_fitness,
        trace=np.array(trace),
        n_evaluations=n_evaluations,
    )
