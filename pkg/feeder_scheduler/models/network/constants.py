"""The :mod:`~feeder_scheduler.models.network.constants` module contains the constants
used to solve and check the feeder power flow.

The per-unit bases and the substation voltage setpoint are not published with the
33-bus benchmark data: the defaults use the 12.66 kV feeder voltage, a 100 MVA power
base and a 1.0 p.u. flat start.
"""  # noqa: D205, D415

from dataclasses import dataclass
from typing import ClassVar

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class NetworkConsts(ConstantsDataclass):
    """Dataclass to store all constants for the `network` module."""

    base_kv: float = 12.66
    """Line-to-line base voltage, [kV]."""

    base_mva: float = 100.0
    """Three phase power base, [MVA]."""

    substation_voltage: float = 1.0
    """Voltage magnitude held at the substation, [p.u.]."""

    tolerance: float = 1e-8
    """Largest voltage change between sweeps accepted as converged, [p.u.]."""

    max_iterations: int = 200
    """Number of sweeps before the solver reports divergence."""

    default_ampacity: float = 400.0
    """Current limit applied to lines without an ampacity in the case file, [A]."""

    v_min: float = 0.95
    """Lower node voltage limit, [p.u.]."""

    v_max: float = 1.05
    """Upper node voltage limit, [p.u.]."""

    peak_load_factor: float = 1.3
    """Ratio of the feeder peak demand to the nominal case load.

    Load profiles are normalised against the peak demand, so the per-state demand at a
    bus is its nominal load times the load multiplier times this factor.
    """

    substation_bus: ClassVar[int] = 1
    """The bus id of the substation."""
