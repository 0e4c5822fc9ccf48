"""The :mod:`~feeder_scheduler.models.dms.plan` submodule builds the a priori dispatch
plan of a scheduling day from the grid price signal.

Partitioning the day
====================

The mean grid price over the day is the decision value. States priced strictly below
the mean are charge states, states priced strictly above it are discharge states and
every other state is a standby state. Batteries therefore only buy cheap energy and
only sell when energy is expensive.

Allocating battery limits
=========================

Discharge states are ranked by descending price and charge states by ascending price,
with ties going to the earlier state. Given the energy a battery can move between its
state of charge limits, the first ``z`` ranked states get the full power rating, where
``z`` is the number of full power states that energy covers. The next ranked state
gets the remainder, divided by the discharge efficiency for discharging and multiplied
by the charge efficiency for charging, and the rest get nothing. The remainder is
limited to the power rating unless
:attr:`~feeder_scheduler.models.dms.constants.DmsConsts.clamp_remainder` is switched
off.

The fixed window baseline
=========================

The ``fixed-window`` strategy is the usual comparison baseline: batteries charge at
full power chronologically from the first charge state until full, then discharge at
full power immediately afterwards until empty, whatever the price. The limits are
exact dispatches, not caps, and the plan marks them as fixed.

Microturbines and fictitious charges
====================================

A microturbine may only run in states where the grid price exceeds its generation plus
operation and maintenance cost. The fictitious charge price on battery energy is the
mean grid price, or zero when fictitious charges are switched off.
"""  # noqa: D205, D415

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import floor
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from feeder_scheduler.core.exceptions import ConfigurationError, InputError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.der_models.devices import (
    Bess,
    DeviceFleet,
    MicroTurbine,
    mt_bounds,
)
from feeder_scheduler.models.der_models.storage import (
    clamp_charge,
    clamp_discharge,
    soc_update,
)

STRATEGIES: tuple[str, ...] = ("mpas", "fixed-window")
"""The supported battery scheduling strategies."""

MIN_DISPATCH: float = 1e-6
"""Dispatches below this power are treated as idle, [kW]."""


class Mode(Enum):
    """Enumeration for battery operating modes."""

    CHARGE = "charge"
    STANDBY = "standby"
    DISCHARGE = "discharge"


@dataclass(frozen=True)
class PriceSignal:
    """The grid and customer prices of a scheduling day."""

    grid_price: np.ndarray
    """Price paid for grid energy in each state, [$/kWh]."""
    customer_price: np.ndarray
    """Price billed to customers in each state, [$/kWh]."""

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid_price, dtype=float)
        customer = np.asarray(self.customer_price, dtype=float)

        if grid.ndim != 1 or grid.size == 0 or customer.shape != grid.shape:
            to_raise = InputError(
                "Price signal needs matching grid and customer prices for at least "
                "one state"
            )
            LOGGER.critical(to_raise)
            raise to_raise

        if not (np.all(np.isfinite(grid)) and np.all(np.isfinite(customer))):
            to_raise = InputError("Price signal contains non-finite prices")
            LOGGER.critical(to_raise)
            raise to_raise

        object.__setattr__(self, "grid_price", grid)
        object.__setattr__(self, "customer_price", customer)

    @classmethod
    def from_grid(cls, grid_price: ArrayLike, markup: float = 1.05) -> PriceSignal:
        """Build a price signal, billing customers a fixed markup on the grid price."""

        grid = np.asarray(grid_price, dtype=float)
        return cls(grid_price=grid, customer_price=grid * markup)

    @property
    def n_states(self) -> int:
        """The number of system states."""
        return self.grid_price.shape[0]

    @property
    def mean_price(self) -> float:
        """The mean grid price over the day, [$/kWh]."""
        return float(self.grid_price.mean())


@dataclass(frozen=True)
class DmsPlan:
    """The a priori dispatch plan of a scheduling day.

    Arrays are indexed by state first, then by battery or microturbine in fleet order.
    """

    strategy: str
    """The battery scheduling strategy."""
    modes: tuple[tuple[Mode, ...], ...]
    """The operating mode of each battery in each state."""
    bess_caps: np.ndarray
    """Charge or discharge limit of each battery in each state, [kW]."""
    mt_caps: np.ndarray
    """Output limit of each microturbine in each state, [kW]."""
    charge_states: tuple[int, ...]
    """States in which batteries may charge."""
    standby_states: tuple[int, ...]
    """States in which no battery operates."""
    discharge_states: tuple[int, ...]
    """States in which batteries may discharge."""
    mt_states: tuple[int, ...]
    """States in which at least one microturbine may run."""
    fc_price: float
    """The fictitious charge price on battery energy, [$/kWh]."""
    bess_fixed: bool = False
    """Whether the battery limits are fixed dispatches rather than caps."""

    @property
    def n_states(self) -> int:
        """The number of system states."""
        return len(self.modes)

    def mode(self, state: int, bess: int) -> Mode:
        """The operating mode of a battery in a state."""
        return self.modes[state][bess]


def partition_states(p: PriceSignal) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split the states of a day into charge and discharge states.

    States priced exactly at the mean belong to neither set.

    Args:
        p: The price signal.

    Returns:
        The charge states and the discharge states, in chronological order.
    """

    mean = p.mean_price
    charge = tuple(int(idx) for idx in np.flatnonzero(p.grid_price < mean))
    discharge = tuple(int(idx) for idx in np.flatnonzero(p.grid_price > mean))
    return charge, discharge


def _ranked(p: PriceSignal, states: tuple[int, ...], descending: bool) -> list[int]:
    """Rank states by price, breaking ties by the earlier state."""

    if not states:
        return []

    idx = np.asarray(states)
    prices = p.grid_price[idx]
    order = np.lexsort((idx, -prices if descending else prices))
    return [int(state) for state in idx[order]]


def _allocate(
    ranked: list[int],
    n_states: int,
    energy: float,
    p_max: float,
    efficiency_factor: float,
    dt: float,
    clamp_remainder: bool,
) -> np.ndarray:
    """Allocate an energy budget over ranked states at a given power rating."""

    caps = np.zeros(n_states)
    if not ranked or p_max <= 0 or energy <= 0:
        return caps

    # Guard against 5.999... full states from float division
    n_full = floor(energy / (p_max * dt) + 1e-9)
    for state in ranked[:n_full]:
        caps[state] = p_max

    if n_full < len(ranked):
        remainder = max(energy - n_full * p_max * dt, 0.0) / dt * efficiency_factor
        if remainder < MIN_DISPATCH:
            remainder = 0.0
        caps[ranked[n_full]] = min(remainder, p_max) if clamp_remainder else remainder

    return caps


def allocate_discharge_limits(
    b: Bess,
    p: PriceSignal,
    discharge_states: tuple[int, ...],
    dt: float = 1.0,
    clamp_remainder: bool = True,
) -> np.ndarray:
    """Allocate the discharge limits of a battery over the discharge states.

    The budget is the full band between the state of charge limits, as the battery is
    expected to reach full charge before the discharge states.

    Args:
        b: The battery.
        p: The price signal.
        discharge_states: The states in which the battery may discharge.
        dt: The state duration, [h].
        clamp_remainder: Limit the partial state allocation to the power rating.

    Returns:
        The discharge limit in each state, [kW].
    """

    return _allocate(
        ranked=_ranked(p, discharge_states, descending=True),
        n_states=p.n_states,
        energy=(b.soc_max - b.soc_min) * b.capacity,
        p_max=b.p_max_d,
        efficiency_factor=1 / b.eta_d,
        dt=dt,
        clamp_remainder=clamp_remainder,
    )


def allocate_charge_limits(
    b: Bess,
    p: PriceSignal,
    charge_states: tuple[int, ...],
    dt: float = 1.0,
    clamp_remainder: bool = True,
) -> np.ndarray:
    """Allocate the charge limits of a battery over the charge states.

    The budget is the headroom between the initial state of charge and the upper
    limit.

    Args:
        b: The battery.
        p: The price signal.
        charge_states: The states in which the battery may charge.
        dt: The state duration, [h].
        clamp_remainder: Limit the partial state allocation to the power rating.

    Returns:
        The charge limit in each state, [kW].
    """

    return _allocate(
        ranked=_ranked(p, charge_states, descending=False),
        n_states=p.n_states,
        energy=(b.soc_max - b.soc_init) * b.capacity,
        p_max=b.p_max_c,
        efficiency_factor=b.eta_c,
        dt=dt,
        clamp_remainder=clamp_remainder,
    )


def mt_window(mt: MicroTurbine, p: PriceSignal) -> tuple[int, ...]:
    """Find the states in which running a microturbine adds profit.

    Args:
        mt: The microturbine.
        p: The price signal.

    Returns:
        The states priced strictly above the microturbine threshold price.
    """

    return tuple(int(idx) for idx in np.flatnonzero(p.grid_price > mt.threshold_price))


def fictitious_price(p: PriceSignal) -> float:
    """The fictitious charge price on battery energy, [$/kWh]."""
    return p.mean_price


def _fixed_window(
    b: Bess, n_states: int, first_state: int, dt: float
) -> tuple[np.ndarray, list[Mode]]:
    """Charge at full power from a state until full, then discharge until empty."""

    caps = np.zeros(n_states)
    modes = [Mode.STANDBY] * n_states

    soc = b.soc_init
    state = first_state
    while state < n_states:
        power = clamp_charge(b, soc, b.p_max_c, dt)
        if power < MIN_DISPATCH:
            break
        caps[state], modes[state] = power, Mode.CHARGE
        soc = soc_update(b, soc, power, 0.0, dt)
        state += 1

    while state < n_states:
        power = clamp_discharge(b, soc, b.p_max_d, dt)
        if power < MIN_DISPATCH:
            break
        caps[state], modes[state] = power, Mode.DISCHARGE
        soc = soc_update(b, soc, 0.0, power, dt)
        state += 1

    return caps, modes


def build_plan(
    fleet: DeviceFleet,
    prices: PriceSignal,
    strategy: str = "mpas",
    dt: float = 1.0,
    fictitious_charges: bool = True,
    clamp_remainder: bool = True,
) -> DmsPlan:
    """Build the dispatch plan of a fleet for a scheduling day.

    Args:
        fleet: The device fleet.
        prices: The price signal.
        strategy: ``mpas`` for price ranked limits or ``fixed-window`` for the
            baseline.
        dt: The state duration, [h].
        fictitious_charges: Whether to price fictitious charges on battery energy.
        clamp_remainder: Limit partial state allocations to the power rating.

    Raises:
        ConfigurationError: if the strategy is not known.
    """

    if strategy not in STRATEGIES:
        to_raise = ConfigurationError(f"Unknown scheduling strategy: {strategy}")
        LOGGER.critical(to_raise)
        raise to_raise

    n_states = prices.n_states
    charge_states, discharge_states = partition_states(prices)

    bess_caps = np.zeros((n_states, len(fleet.batteries)))
    bess_modes: list[list[Mode]] = []

    for col, bess in enumerate(fleet.batteries):
        if strategy == "fixed-window":
            first = charge_states[0] if charge_states else n_states
            caps, modes = _fixed_window(bess, n_states, first, dt)
        else:
            charge = allocate_charge_limits(
                bess, prices, charge_states, dt, clamp_remainder
            )
            discharge = allocate_discharge_limits(
                bess, prices, discharge_states, dt, clamp_remainder
            )
            caps = charge + discharge
            modes = [Mode.STANDBY] * n_states
            for idx in np.flatnonzero(charge):
                modes[idx] = Mode.CHARGE
            for idx in np.flatnonzero(discharge):
                modes[idx] = Mode.DISCHARGE
        bess_caps[:, col] = caps
        bess_modes.append(modes)

    mt_caps = np.zeros((n_states, len(fleet.microturbines)))
    for col, mt in enumerate(fleet.microturbines):
        window = set(mt_window(mt, prices))
        mt_caps[:, col] = [mt_bounds(mt, idx in window)[1] for idx in range(n_states)]

    modes_by_state = tuple(
        tuple(modes[idx] for modes in bess_modes) for idx in range(n_states)
    )

    if strategy == "fixed-window":
        charge_states = tuple(
            idx for idx, row in enumerate(modes_by_state) if Mode.CHARGE in row
        )
        discharge_states = tuple(
            idx for idx, row in enumerate(modes_by_state) if Mode.DISCHARGE in row
        )

    active = set(charge_states) | set(discharge_states)
    plan = DmsPlan(
        strategy=strategy,
        modes=modes_by_state,
        bess_caps=bess_caps,
        mt_caps=mt_caps,
        charge_states=charge_states,
        standby_states=tuple(idx for idx in range(n_states) if idx not in active),
        discharge_states=discharge_states,
        mt_states=tuple(int(idx) for idx in np.flatnonzero(mt_caps.sum(axis=1) > 0)),
        fc_price=fictitious_price(prices) if fictitious_charges else 0.0,
        bess_fixed=strategy == "fixed-window",
    )

    LOGGER.info(
        "DMS plan built (%s): %i charge, %i standby, %i discharge states, "
        "fictitious price %.4f $/kWh",
        strategy,
        len(plan.charge_states),
        len(plan.standby_states),
        len(plan.discharge_states),
        plan.fc_price,
    )
    return plan


def load_price_signal(
    path: Path, markup: float = 1.05, n_states: int | None = None
) -> PriceSignal:
    """Load a price signal from a CSV file.

    The file holds a ``grid_price`` column and optionally ``state_index`` and
    ``customer_price`` columns. Rows are ordered by ``state_index`` when it is given.
    Customer prices default to the grid price times the markup.

    Args:
        path: The price file.
        markup: The customer price markup on the grid price.
        n_states: The expected number of states, if known.

    Raises:
        InputError: if the file is missing, cannot be read or does not match the
            number of states.
    """

    to_raise: Exception

    if not path.is_file():
        to_raise = InputError(f"price file not found: {path}")
        LOGGER.critical(to_raise)
        raise to_raise

    try:
        frame = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as err:
        to_raise = InputError(f"Could not load prices from {path}: {err}")
        LOGGER.critical(to_raise)
        raise to_raise

    if "grid_price" not in frame.columns:
        to_raise = InputError(f"Price file {path} has no grid_price column")
        LOGGER.critical(to_raise)
        raise to_raise

    if "state_index" in frame.columns:
        frame = frame.sort_values("state_index")

    if n_states is not None and len(frame) != n_states:
        to_raise = InputError(
            f"Price file {path} has {len(frame)} states, expected {n_states}"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    try:
        grid = frame["grid_price"].to_numpy(dtype=float)
        if "customer_price" in frame.columns:
            signal = PriceSignal(
                grid_price=grid,
                customer_price=frame["customer_price"].to_numpy(dtype=float),
            )
        else:
            signal = PriceSignal.from_grid(grid, markup)
    except ValueError as err:
        to_raise = InputError(f"Could not load prices from {path}: {err}")
        LOGGER.critical(to_raise)
        raise to_raise

    LOGGER.info(
        "Price signal loaded from %s: mean grid price %.4f $/kWh",
        path,
        signal.mean_price,
    )
    return signal
