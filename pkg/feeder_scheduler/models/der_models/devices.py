"""The :mod:`~feeder_scheduler.models.der_models.devices` submodule defines the device
descriptors of the feeder DERs.

Solar (SPV) and wind (WT) units belong to third party owners and are paid a contract
price for every kWh they deliver; their output follows the synthesized profiles and is
not dispatched. The microturbine (MT) and the batteries (BESS) belong to the utility
and are dispatched by the scheduler. All descriptors are immutable.

A :class:`~feeder_scheduler.models.der_models.devices.DeviceFleet` gathers the units
of a case, built with
:func:`~feeder_scheduler.models.der_models.devices.build_fleet` from the case DER
placements and the :class:`~feeder_scheduler.models.der_models.constants.DerConsts`
parameters. A :class:`~feeder_scheduler.models.der_models.devices.Dispatch` holds the
set-points of the dispatchable units for one system state.
"""  # noqa: D205, D415

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import sqrt

import numpy as np

from feeder_scheduler.core.exceptions import ConfigurationError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.der_models.constants import DerConsts
from feeder_scheduler.models.network.case import CaseData


@dataclass(frozen=True)
class RenewableUnit:
    """A third party solar or wind unit."""

    node: int
    """The bus id hosting the unit."""
    kind: str
    """``SPV`` or ``WT``."""
    rating: float
    """Rated output, [kWp]."""
    price: float
    """Contract purchase price, [$/kWh]."""

    def __post_init__(self) -> None:
        if self.kind not in ("SPV", "WT") or self.rating <= 0 or self.price < 0:
            to_raise = ConfigurationError(
                f"Invalid renewable unit at {self.node}: kind {self.kind}, "
                f"rating {self.rating}, price {self.price}"
            )
            LOGGER.critical(to_raise)
            raise to_raise


@dataclass(frozen=True)
class MicroTurbine:
    """A utility owned microturbine."""

    node: int
    """The bus id hosting the unit."""
    rating: float
    """Rated output, [kW]."""
    reserve: float
    """Output held back as reserve, [kW]."""
    fuel_price: float
    """Generation cost, [$/kWh]."""
    om_price: float
    """Operation and maintenance cost, [$/kWh]."""

    def __post_init__(self) -> None:
        if not 0 <= self.reserve <= self.rating:
            to_raise = ConfigurationError(
                f"Microturbine at {self.node} needs 0 <= reserve <= rating"
            )
            LOGGER.critical(to_raise)
            raise to_raise

    @property
    def threshold_price(self) -> float:
        """The grid price above which dispatching the unit adds profit, [$/kWh]."""
        return self.fuel_price + self.om_price


@dataclass(frozen=True)
class Bess:
    """A utility owned battery energy storage system."""

    node: int
    """The bus id hosting the unit."""
    capacity: float
    """Energy capacity, [kWh]."""
    p_max_c: float
    """Maximum charging power, [kW]."""
    p_max_d: float
    """Maximum discharging power, [kW]."""
    soc_min: float
    """Lower state of charge limit, [fraction]."""
    soc_max: float
    """Upper state of charge limit, [fraction]."""
    soc_init: float
    """State of charge at the start of the day, [fraction]."""
    eta_c: float
    """Charging efficiency, [fraction]."""
    eta_d: float
    """Discharging efficiency, [fraction]."""
    om_price: float
    """Operation and maintenance cost per kWh charged or discharged, [$/kWh]."""
    fc_price: float = 0.0
    """Fictitious charge price on battery energy transactions, [$/kWh]."""

    def __post_init__(self) -> None:
        problems = []
        if self.capacity < 0 or self.p_max_c < 0 or self.p_max_d < 0:
            problems.append("capacity and power limits must be >= 0")
        if not 0 <= self.soc_min < self.soc_max <= 1:
            problems.append("needs 0 <= soc_min < soc_max <= 1")
        if not self.soc_min <= self.soc_init <= self.soc_max:
            problems.append("soc_init outside the soc band")
        if not (0 < self.eta_c <= 1 and 0 < self.eta_d <= 1):
            problems.append("efficiencies must lie in (0, 1]")

        if problems:
            to_raise = ConfigurationError(
                f"Invalid battery at {self.node}: {'; '.join(problems)}"
            )
            LOGGER.critical(to_raise)
            raise to_raise

    @property
    def round_trip(self) -> float:
        """The round trip efficiency, [fraction]."""
        return self.eta_c * self.eta_d

    @property
    def usable_energy(self) -> float:
        """Energy stored between the state of charge limits, [kWh]."""
        return (self.soc_max - self.soc_min) * self.capacity


@dataclass(frozen=True)
class DeviceFleet:
    """The DER units of a case."""

    renewables: tuple[RenewableUnit, ...] = ()
    """Third party solar and wind units."""
    microturbines: tuple[MicroTurbine, ...] = ()
    """Utility owned microturbines."""
    batteries: tuple[Bess, ...] = ()
    """Utility owned batteries."""

    @property
    def spv(self) -> tuple[RenewableUnit, ...]:
        """The solar units."""
        return tuple(unit for unit in self.renewables if unit.kind == "SPV")

    @property
    def wt(self) -> tuple[RenewableUnit, ...]:
        """The wind units."""
        return tuple(unit for unit in self.renewables if unit.kind == "WT")

    @property
    def n_genes(self) -> int:
        """The number of dispatch decisions per state."""
        return len(self.batteries) + len(self.microturbines)

    def with_fc_price(self, fc_price: float) -> DeviceFleet:
        """Return a copy of the fleet with a fictitious charge price on every BESS."""
        return replace(
            self,
            batteries=tuple(replace(b, fc_price=fc_price) for b in self.batteries),
        )


def build_fleet(case: CaseData, consts: DerConsts = DerConsts()) -> DeviceFleet:
    """Build the device fleet of a case.

    A microturbine reserve larger than the unit rating is reduced to the rating, which
    leaves the unit fully reserved.

    Args:
        case: The case holding the DER placements.
        consts: The device parameters.

    Raises:
        ConfigurationError: if the parameters give invalid devices.
    """

    eta = sqrt(consts.round_trip_efficiency)

    renewables = tuple(
        RenewableUnit(
            node=der.node,
            kind=der.kind,
            rating=der.rating,
            price=consts.spv_price if der.kind == "SPV" else consts.wt_price,
        )
        for der in case.ders
        if der.kind in ("SPV", "WT")
    )

    microturbines = []
    for der in case.ders_of("MT"):
        reserve = consts.mt_reserve
        if reserve > der.rating:
            LOGGER.warning(
                "MT reserve %s kW exceeds rating at node %i, unit fully reserved",
                reserve,
                der.node,
            )
            reserve = der.rating
        microturbines.append(
            MicroTurbine(
                node=der.node,
                rating=der.rating,
                reserve=reserve,
                fuel_price=consts.mt_fuel_price,
                om_price=consts.mt_om_price,
            )
        )

    batteries = tuple(
        Bess(
            node=der.node,
            capacity=der.rating,
            p_max_c=consts.bess_max_charge,
            p_max_d=consts.bess_max_discharge,
            soc_min=consts.soc_min,
            soc_max=consts.soc_max,
            soc_init=consts.soc_init,
            eta_c=eta,
            eta_d=eta,
            om_price=consts.bess_om_price,
        )
        for der in case.ders_of("BESS")
    )

    fleet = DeviceFleet(
        renewables=renewables,
        microturbines=tuple(microturbines),
        batteries=batteries,
    )
    LOGGER.info(
        "Device fleet built: %i renewable units, %i MT, %i BESS",
        len(fleet.renewables),
        len(fleet.microturbines),
        len(fleet.batteries),
    )
    return fleet


@dataclass(frozen=True)
class Dispatch:
    """The set-points of the dispatchable units for one system state.

    Arrays follow the order of the fleet batteries and microturbines.
    """

    bess_charge: np.ndarray = field(default_factory=lambda: np.zeros(0))
    """Battery charging power, [kW]."""
    bess_discharge: np.ndarray = field(default_factory=lambda: np.zeros(0))
    """Battery discharging power, [kW]."""
    mt_output: np.ndarray = field(default_factory=lambda: np.zeros(0))
    """Microturbine output, [kW]."""

    @classmethod
    def zeros(cls, fleet: DeviceFleet) -> Dispatch:
        """A dispatch with every unit idle."""
        return cls(
            bess_charge=np.zeros(len(fleet.batteries)),
            bess_discharge=np.zeros(len(fleet.batteries)),
            mt_output=np.zeros(len(fleet.microturbines)),
        )


def mt_bounds(mt: MicroTurbine, state_in_window: bool) -> tuple[float, float]:
    """Return the dispatch bounds of a microturbine for a state.

    The unit may only run in states of its dispatch window, and then only up to its
    rating less the reserve.

    Args:
        mt: The microturbine.
        state_in_window: Whether the state lies in the microturbine dispatch window.

    Returns:
        The lower and upper output bounds, [kW].
    """

    if not state_in_window:
        return (0.0, 0.0)

    return (0.0, mt.rating - mt.reserve)
