"""The :mod:`~feeder_scheduler.models.der_models.constants` module contains the default
parameters of the utility owned batteries and microturbines and the contract tariffs
of the third party renewable units. The case file only gives the placement and rating of
each unit, every other device parameter comes from here.
"""  # noqa: D205, D415

from dataclasses import dataclass

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class DerConsts(ConstantsDataclass):
    """Dataclass to store all constants for the `der_models` module."""

    round_trip_efficiency: float = 0.85
    """Battery round trip efficiency, [fraction].

    The charge and discharge efficiencies are both taken as its square root.
    """

    bess_max_charge: float = 500.0
    """Maximum battery charging power, [kW]."""

    bess_max_discharge: float = 500.0
    """Maximum battery discharging power, [kW]."""

    soc_min: float = 0.1
    """Lower state of charge limit, [fraction]."""

    soc_max: float = 1.0
    """Upper state of charge limit, [fraction]."""

    soc_init: float = 0.1
    """State of charge at the start of the day, [fraction]."""

    bess_om_price: float = 0.0015
    """Battery operation and maintenance cost per kWh charged or discharged, [$/kWh]."""

    mt_reserve: float = 400.0
    """Microturbine output held back as reserve, [kW]."""

    mt_fuel_price: float = 0.0335
    """Microturbine generation cost, [$/kWh]."""

    mt_om_price: float = 0.012
    """Microturbine operation and maintenance cost, [$/kWh]."""

    spv_price: float = 0.028
    """Contract price paid for solar energy, [$/kWh]."""

    wt_price: float = 0.029
    """Contract price paid for wind energy, [$/kWh]."""
