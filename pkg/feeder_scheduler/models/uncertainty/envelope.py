"""The :mod:`~feeder_scheduler.models.uncertainty.envelope` submodule builds uncertainty
envelopes from historical profiles and draws synthetic days from them.

Envelopes
=========

A historical series holds one normalised multiplier per recorded day and system state.
Its envelope has three parts:

* the data spread: per state, the mean plus or minus ``k`` sample standard deviations,
  with negative lower bounds clipped at zero. Every synthetic value must lie inside.
* the hourly budget of uncertainty: per state, the mean plus or minus ``k`` standard
  errors of that mean. A synthetic day mean must lie between the averages of these
  per-state bounds.
* the daily budget of uncertainty: the mean of the per-day means plus or minus ``k``
  standard deviations of those day means. A synthetic day mean must also lie inside.

The hourly budget alone over-constrains months with little variation and
under-constrains very variable months; the daily budget limits both cases. The day
mean target is the intersection of the two budgets.

Sampling
========

:func:`~feeder_scheduler.models.uncertainty.envelope.synthesize_day` draws each state
uniformly from its data spread and then scales the deviations from the per-state means
until the day mean falls in the target interval. The data spread contains the means,
so scaled values never leave it. States with no recorded output (night hours for
solar units) have a collapsed spread at zero and stay at zero.
"""  # noqa: D205, D415

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.random import SeedSequence, default_rng
from xarray import DataArray

from feeder_scheduler.core.exceptions import EnvelopeError
from feeder_scheduler.core.logger import LOGGER


@dataclass(frozen=True)
class HistoricalSeries:
    """Historical multipliers of one profile kind."""

    values: np.ndarray
    """Normalised multipliers shaped (days, states)."""
    name: str = ""
    """The profile kind, such as ``spv``."""
    month: int = 0
    """The month the days were selected from, 0 when all days are used."""

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or self.values.size == 0:
            to_raise = EnvelopeError(f"Historical series {self.name} is empty")
            LOGGER.critical(to_raise)
            raise to_raise

        if not np.all(np.isfinite(self.values)):
            to_raise = EnvelopeError(
                f"Historical series {self.name} has non-finite values"
            )
            LOGGER.critical(to_raise)
            raise to_raise

    @property
    def n_days(self) -> int:
        """The number of recorded days."""
        return self.values.shape[0]

    @property
    def n_states(self) -> int:
        """The number of states per day."""
        return self.values.shape[1]

    @classmethod
    def from_dataarray(cls, darray: DataArray, month: int = 0) -> HistoricalSeries:
        """Build a series from a ``("day", "state")`` data array.

        Args:
            darray: The historical data, as returned by the profile readers.
            month: Keep only days tagged with this month, 0 keeps every day.

        Raises:
            EnvelopeError: if a month is requested but the data has no month tags or
                no days in that month.
        """

        name = str(darray.name or "")

        if month:
            if "month" not in darray.coords:
                to_raise = EnvelopeError(
                    f"Historical series {name} has no month tags to select {month}"
                )
                LOGGER.critical(to_raise)
                raise to_raise
            darray = darray.where(darray["month"] == month, drop=True)

        return cls(
            values=np.asarray(darray.transpose("day", "state"), dtype=float),
            name=name,
            month=month,
        )


@dataclass(frozen=True)
class UncertaintyEnvelope:
    """The uncertainty envelope of a historical series."""

    mean: np.ndarray
    """Per-state mean of the historical values."""
    lower: np.ndarray
    """Per-state lower data spread bound."""
    upper: np.ndarray
    """Per-state upper data spread bound."""
    mu_lower: np.ndarray
    """Per-state lower hourly budget bound on the mean."""
    mu_upper: np.ndarray
    """Per-state upper hourly budget bound on the mean."""
    daily_lower: float
    """Lower daily budget bound on the day mean."""
    daily_upper: float
    """Upper daily budget bound on the day mean."""
    k: float
    """The spread coefficient."""
    name: str = ""
    """The profile kind."""
    target: tuple[float, float] = field(init=False)
    """The day mean interval satisfying both budgets."""

    def __post_init__(self) -> None:
        if self.k <= 0:
            to_raise = EnvelopeError(f"Spread coefficient must be positive: {self.k}")
            LOGGER.critical(to_raise)
            raise to_raise

        if np.any(self.lower > self.upper) or np.any(self.mu_lower > self.mu_upper):
            to_raise = EnvelopeError(f"Envelope {self.name} has crossed bounds")
            LOGGER.critical(to_raise)
            raise to_raise

        target_lo = max(float(self.mu_lower.mean()), self.daily_lower)
        target_hi = min(float(self.mu_upper.mean()), self.daily_upper)
        object.__setattr__(self, "target", (target_lo, target_hi))

    @property
    def n_states(self) -> int:
        """The number of states per day."""
        return self.mean.shape[0]

    def check_feasible(self, tolerance: float = 1e-12) -> None:
        """Check that some day satisfies the data spread and both budgets.

        Raises:
            EnvelopeError: if the budgets do not overlap or their overlap cannot be
                reached inside the data spread.
        """

        target_lo, target_hi = self.target
        if target_lo > target_hi + tolerance:
            to_raise = EnvelopeError(
                f"Envelope {self.name}: hourly and daily budgets do not overlap"
            )
            LOGGER.critical(to_raise)
            raise to_raise

        if (
            self.lower.mean() > target_hi + tolerance
            or self.upper.mean() < target_lo - tolerance
        ):
            to_raise = EnvelopeError(
                f"Envelope {self.name}: budgets unreachable inside the data spread"
            )
            LOGGER.critical(to_raise)
            raise to_raise


def build_envelope(h: HistoricalSeries, k: float = 1.0) -> UncertaintyEnvelope:
    """Build the uncertainty envelope of a historical series.

    Args:
        h: The historical series.
        k: The spread coefficient.

    Raises:
        EnvelopeError: if the series has fewer than two days or k is not positive.
    """

    if h.n_days < 2:
        to_raise = EnvelopeError(
            f"Historical series {h.name} needs at least 2 days, found {h.n_days}"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    mean = h.values.mean(axis=0)
    spread = h.values.std(axis=0, ddof=1)
    std_error = spread / np.sqrt(h.n_days)

    day_means = h.values.mean(axis=1)
    daily_mean = float(day_means.mean())
    daily_sd = float(day_means.std(ddof=1))

    envelope = UncertaintyEnvelope(
        mean=mean,
        lower=np.maximum(mean - k * spread, 0.0),
        upper=mean + k * spread,
        mu_lower=np.maximum(mean - k * std_error, 0.0),
        mu_upper=mean + k * std_error,
        daily_lower=max(daily_mean - k * daily_sd, 0.0),
        daily_upper=daily_mean + k * daily_sd,
        k=k,
        name=h.name,
    )

    LOGGER.info(
        "Envelope built for %s from %i days: day mean target [%.4f, %.4f]",
        h.name or "series",
        h.n_days,
        *envelope.target,
    )
    return envelope


def synthesize_day(
    env: UncertaintyEnvelope,
    seed: int | SeedSequence,
    max_passes: int = 50,
    tolerance: float = 1e-12,
) -> np.ndarray:
    """Draw a synthetic day from an uncertainty envelope.

    Args:
        env: The uncertainty envelope.
        seed: The seed of the random generator.
        max_passes: The maximum number of scaling passes.
        tolerance: Slack allowed on the day mean target.

    Returns:
        One multiplier per state.

    Raises:
        EnvelopeError: if the envelope is infeasible or the day mean cannot be brought
            into its target.
    """

    env.check_feasible(tolerance)
    target_lo, target_hi = env.target
    grand_mean = float(env.mean.mean())

    rng = default_rng(seed)
    chi = rng.uniform(env.lower, env.upper)

    for n_pass in range(max_passes + 1):
        day_mean = float(chi.mean())
        if target_lo - tolerance <= day_mean <= target_hi + tolerance:
            LOGGER.debug("Synthetic %s day accepted after %i passes", env.name, n_pass)
            return chi

        if n_pass == max_passes:
            break

        goal = min(max(day_mean, target_lo), target_hi)
        scale = (goal - grand_mean) / (day_mean - grand_mean)
        chi = np.clip(env.mean + scale * (chi - env.mean), env.lower, env.upper)

    to_raise = EnvelopeError(
        f"Synthetic {env.name} day mean not inside its target after {max_passes} passes"
    )
    LOGGER.critical(to_raise)
    raise to_raise


def synthesize_profiles(
    histories: dict[str, HistoricalSeries],
    k: float,
    seed: int,
    max_passes: int = 50,
    tolerance: float = 1e-12,
) -> dict[str, np.ndarray]:
    """Synthesize one day for each historical series.

    Each series gets an independent child seed spawned from ``seed`` in sorted name
    order, so the draws do not depend on the order of ``histories``.

    Args:
        histories: Historical series keyed by profile kind.
        k: The spread coefficient.
        seed: The run seed.
        max_passes: The maximum number of scaling passes per day.
        tolerance: Slack allowed on the day mean target.

    Returns:
        Synthetic multipliers keyed by profile kind.
    """

    names = sorted(histories)
    children = SeedSequence(seed).spawn(len(names))

    return {
        name: synthesize_day(
            build_envelope(histories[name], k),
            child,
            max_passes=max_passes,
            tolerance=tolerance,
        )
        for name, child in zip(names, children)
    }
