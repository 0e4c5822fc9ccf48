"""The :mod:`~feeder_scheduler.models.der_models.storage` submodule provides the battery
dispatch clamps and the state of charge dynamics.

Requested charging and discharging powers are repaired rather than rejected: each clamp
returns the largest feasible power no greater than the request, given the power rating
and the energy left between the current state of charge and the relevant limit. The
clamps use the state of charge at the end of the previous state. Powers are measured
on the grid side, so charging stores ``eta_c`` of the energy drawn and discharging
removes ``1 / eta_d`` of the energy delivered.
"""  # noqa: D205, D415

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from feeder_scheduler.core.exceptions import ConsistencyError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.der_models.devices import Bess


def clamp_charge(b: Bess, soc_prev: float, requested: float, dt: float) -> float:
    """Clamp a requested charging power to what the battery can absorb.

    Args:
        b: The battery.
        soc_prev: The state of charge at the end of the previous state.
        requested: The requested charging power, [kW].
        dt: The state duration, [h].

    Returns:
        The feasible charging power, [kW].
    """

    headroom = (b.soc_max - soc_prev) * b.capacity / (b.eta_c * dt)
    return max(0.0, min(requested, b.p_max_c, headroom))


def clamp_discharge(b: Bess, soc_prev: float, requested: float, dt: float) -> float:
    """Clamp a requested discharging power to what the battery can deliver.

    Args:
        b: The battery.
        soc_prev: The state of charge at the end of the previous state.
        requested: The requested discharging power, [kW].
        dt: The state duration, [h].

    Returns:
        The feasible discharging power, [kW].
    """

    available = (soc_prev - b.soc_min) * b.capacity * b.eta_d / dt
    return max(0.0, min(requested, b.p_max_d, available))


def soc_update(
    b: Bess,
    soc_prev: float,
    p_c: float,
    p_d: float,
    dt: float,
    tolerance: float = 1e-9,
) -> float:
    """Advance the state of charge of a battery over one state.

    Args:
        b: The battery.
        soc_prev: The state of charge at the end of the previous state.
        p_c: The clamped charging power, [kW].
        p_d: The clamped discharging power, [kW].
        dt: The state duration, [h].
        tolerance: The slack allowed outside the state of charge band.

    Returns:
        The state of charge at the end of the state.

    Raises:
        ConsistencyError: if the battery charges and discharges in the same state or
            the new state of charge leaves the band by more than the tolerance.
    """

    if p_c > 0 and p_d > 0:
        to_raise = ConsistencyError(
            f"Battery at {b.node} charges and discharges in the same state"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    if p_c == 0 and p_d == 0:
        return soc_prev

    stored = b.eta_c * p_c - p_d / b.eta_d
    soc_new = soc_prev + stored * dt / b.capacity

    if soc_new < b.soc_min - tolerance or soc_new > b.soc_max + tolerance:
        to_raise = ConsistencyError(
            f"Battery at {b.node} state of charge {soc_new:.12f} left "
            f"[{b.soc_min}, {b.soc_max}]"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    return min(max(soc_new, b.soc_min), b.soc_max)


@dataclass(frozen=True)
class SocTrace:
    """The state of charge of each battery across the day."""

    initial: np.ndarray
    """State of charge of each battery at the start of the day."""
    values: np.ndarray
    """State of charge at the end of each state, shaped (states, batteries)."""

    @property
    def final(self) -> np.ndarray:
        """State of charge of each battery at the end of the day."""
        if self.values.shape[0] == 0:
            return self.initial
        return self.values[-1]

    def check(self, batteries: tuple[Bess, ...], tolerance: float = 1e-9) -> None:
        """Check that every entry lies in its battery's state of charge band.

        Args:
            batteries: The batteries, in trace column order.
            tolerance: The slack allowed outside the band.

        Raises:
            ConsistencyError: if an entry leaves its band.
        """

        for col, bess in enumerate(batteries):
            column = np.append(self.initial[col], self.values[:, col])
            if np.any(column < bess.soc_min - tolerance) or np.any(
                column > bess.soc_max + tolerance
            ):
                to_raise = ConsistencyError(
                    f"State of charge trace of battery at {bess.node} leaves "
                    f"[{bess.soc_min}, {bess.soc_max}]"
                )
                LOGGER.critical(to_raise)
                raise to_raise
