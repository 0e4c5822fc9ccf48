"""The :mod:`~feeder_scheduler.models.economics.ledger` submodule evaluates the utility
profit of a single system state.

The utility buys energy from the grid, the renewable owners, its microturbines and its
batteries, and bills its customers for their demand. Its revenue in a state is the
customer billing, plus the feeder losses charged at the grid price, plus a fictitious
charge credited on the energy drawn by its batteries. Its payments are the grid
purchase, the renewable contract payments, the microturbine fuel and maintenance costs,
the battery maintenance cost on every kWh charged or discharged, and a fictitious charge
debited on the energy delivered by its batteries.

The fictitious charges appear three times in the state objective and cancel exactly:

.. math::

    FC = E_F \\left(\\sum P_C - \\sum P_D\\right) \\Delta t, \\qquad
    OF = R - P - FC

The reported objective (``of``) is therefore free of fictitious charges, while the
:func:`~feeder_scheduler.models.economics.ledger.fitness` used by the optimiser keeps
them inside the revenue and payments. A battery charging below the fictitious price or
discharging above it then increases the fitness, which steers the optimiser towards
buying cheap and selling dear.
"""  # noqa: D205, D415

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from feeder_scheduler.core.data import DayProfiles
from feeder_scheduler.core.exceptions import EvaluationError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.der_models.devices import DeviceFleet, Dispatch
from feeder_scheduler.models.network.case import CaseData
from feeder_scheduler.models.network.constants import NetworkConsts
from feeder_scheduler.models.network.power_flow import PowerFlowResult

REVENUE_TERMS: tuple[str, ...] = ("billing", "losses", "fc_credit")
"""The revenue terms of a state ledger."""

PAYMENT_TERMS: tuple[str, ...] = (
    "grid",
    "spv",
    "wt",
    "mt_fuel",
    "mt_om",
    "bess_om",
    "fc_debit",
)
"""The payment terms of a state ledger."""


@dataclass(frozen=True)
class StateConditions:
    """The uncontrolled inputs of a system state."""

    state: int
    """The state index."""
    load: float
    """Load multiplier against the peak demand, [fraction]."""
    spv: float
    """Solar output multiplier against the rating, [fraction]."""
    wt: float
    """Wind output multiplier against the rating, [fraction]."""
    grid_price: float
    """Grid energy price, [$/kWh]."""
    customer_price: float
    """Customer billing price, [$/kWh]."""
    dt: float = 1.0
    """State duration, [h]."""


def build_state_conditions(
    profiles: DayProfiles, dt: float = 1.0
) -> list[StateConditions]:
    """Split complete day profiles into per-state conditions.

    Raises:
        InputError: if any day variable is missing.
    """

    profiles.check_complete()

    columns = {
        key: profiles.values(key)
        for key in ("load", "spv", "wt", "grid_price", "customer_price")
    }
    return [
        StateConditions(
            state=state,
            load=float(columns["load"][state]),
            spv=float(columns["spv"][state]),
            wt=float(columns["wt"][state]),
            grid_price=float(columns["grid_price"][state]),
            customer_price=float(columns["customer_price"][state]),
            dt=dt,
        )
        for state in range(profiles.n_states)
    ]


def bus_demand(
    case: CaseData, cond: StateConditions, peak_load_factor: float = 1.3
) -> tuple[np.ndarray, np.ndarray]:
    """The active and reactive load of each bus in a state, [kW] and [kVar].

    Case loads are nominal, so the peak demand is the nominal load scaled by the peak
    load factor. The substation bus carries no load.
    """

    scale = cond.load * peak_load_factor
    p_load = case.p_load * scale
    q_load = case.q_load * scale
    p_load[case.root] = 0.0
    q_load[case.root] = 0.0
    return p_load, q_load


def renewable_output(fleet: DeviceFleet, cond: StateConditions) -> np.ndarray:
    """The output of each renewable unit in a state, in fleet order, [kW]."""

    return np.array(
        [
            unit.rating * (cond.spv if unit.kind == "SPV" else cond.wt)
            for unit in fleet.renewables
        ]
    )


def bus_injections(
    case: CaseData,
    fleet: DeviceFleet,
    cond: StateConditions,
    dispatch: Dispatch,
    peak_load_factor: float = 1.3,
) -> tuple[np.ndarray, np.ndarray]:
    """Build the net demand of each bus in a state.

    Loads and charging batteries add demand, renewable units, microturbines and
    discharging batteries remove it. Distributed units run at unity power factor.

    Args:
        case: The case.
        fleet: The device fleet of the case.
        cond: The state conditions.
        dispatch: The dispatch of the utility units.
        peak_load_factor: The ratio of peak demand to the nominal case loads.

    Returns:
        The net active demand, [kW], and the net reactive demand, [kVar], in bus
        order.
    """

    p_kw, q_kvar = bus_demand(case, cond, peak_load_factor)

    for unit, output in zip(fleet.renewables, renewable_output(fleet, cond)):
        p_kw[case.bus_index[unit.node]] -= output
    for mt, output in zip(fleet.microturbines, dispatch.mt_output):
        p_kw[case.bus_index[mt.node]] -= output
    for bess, p_c, p_d in zip(
        fleet.batteries, dispatch.bess_charge, dispatch.bess_discharge
    ):
        p_kw[case.bus_index[bess.node]] += p_c - p_d

    return p_kw, q_kvar


@dataclass(frozen=True)
class StateLedger:
    """The revenue, payments and energy flows of the utility in a system state.

    Currency terms are in $ and energy terms in kWh.
    """

    state: int
    """The state index."""
    billing: float
    """Revenue from billing the customer demand."""
    losses: float
    """Revenue from charging the feeder losses at the grid price."""
    fc_credit: float
    """Fictitious charge credited on battery charging."""
    grid: float
    """Payment for grid energy, negative when exporting."""
    spv: float
    """Payment to solar unit owners."""
    wt: float
    """Payment to wind unit owners."""
    mt_fuel: float
    """Microturbine generation cost."""
    mt_om: float
    """Microturbine operation and maintenance cost."""
    bess_om: float
    """Battery operation and maintenance cost."""
    fc_debit: float
    """Fictitious charge debited on battery discharging."""
    load_energy: float
    """Customer demand."""
    loss_energy: float
    """Feeder losses."""
    grid_energy: float
    """Energy drawn from the grid."""
    spv_energy: float
    """Energy bought from solar units."""
    wt_energy: float
    """Energy bought from wind units."""
    mt_energy: float
    """Energy generated by microturbines."""
    charge_energy: float
    """Energy drawn by batteries."""
    discharge_energy: float
    """Energy delivered by batteries."""

    @property
    def revenue(self) -> float:
        """Total revenue, including the fictitious charge credit."""
        return self.billing + self.losses + self.fc_credit

    @property
    def payments(self) -> float:
        """Total payments, including the fictitious charge debit."""
        return (
            self.grid
            + self.spv
            + self.wt
            + self.mt_fuel
            + self.mt_om
            + self.bess_om
            + self.fc_debit
        )

    @property
    def fc(self) -> float:
        """The net fictitious charge."""
        return self.fc_credit - self.fc_debit

    @property
    def of(self) -> float:
        """The state objective, free of fictitious charges."""
        return self.revenue - self.payments - self.fc


def state_profit(
    case: CaseData,
    fleet: DeviceFleet,
    dispatch: Dispatch,
    cond: StateConditions,
    pf: PowerFlowResult,
    peak_load_factor: float = 1.3,
) -> StateLedger:
    """Evaluate the utility ledger of a system state.

    Args:
        case: The case.
        fleet: The device fleet, with the fictitious charge price set on each battery.
        dispatch: The clamped dispatch of the utility units.
        cond: The state conditions.
        pf: The power flow solved for the same dispatch and conditions.
        peak_load_factor: The ratio of peak demand to the nominal case loads.

    Raises:
        EvaluationError: if the power flow did not converge.
    """

    if not pf.converged:
        to_raise = EvaluationError(
            f"State {cond.state} evaluated on an unconverged power flow"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    dt = cond.dt
    p_load, _ = bus_demand(case, cond, peak_load_factor)
    demand = float(p_load.sum())

    renewable_kw = {"SPV": 0.0, "WT": 0.0}
    renewable_cost = {"SPV": 0.0, "WT": 0.0}
    for unit, output in zip(fleet.renewables, renewable_output(fleet, cond)):
        renewable_kw[unit.kind] += output
        renewable_cost[unit.kind] += unit.price * output

    mt_output = np.asarray(dispatch.mt_output, dtype=float)
    fuel_prices = np.array([mt.fuel_price for mt in fleet.microturbines])
    mt_om_prices = np.array([mt.om_price for mt in fleet.microturbines])

    charge = np.asarray(dispatch.bess_charge, dtype=float)
    discharge = np.asarray(dispatch.bess_discharge, dtype=float)
    fc_prices = np.array([bess.fc_price for bess in fleet.batteries])
    bess_om_prices = np.array([bess.om_price for bess in fleet.batteries])

    return StateLedger(
        state=cond.state,
        billing=demand * cond.customer_price * dt,
        losses=pf.p_loss * cond.grid_price * dt,
        fc_credit=float(np.dot(fc_prices, charge)) * dt,
        grid=pf.p_grid * cond.grid_price * dt,
        spv=renewable_cost["SPV"] * dt,
        wt=renewable_cost["WT"] * dt,
        mt_fuel=float(np.dot(fuel_prices, mt_output)) * dt,
        mt_om=float(np.dot(mt_om_prices, mt_output)) * dt,
        bess_om=float(np.dot(bess_om_prices, charge + discharge)) * dt,
        fc_debit=float(np.dot(fc_prices, discharge)) * dt,
        load_energy=demand * dt,
        loss_energy=pf.p_loss * dt,
        grid_energy=pf.p_grid * dt,
        spv_energy=renewable_kw["SPV"] * dt,
        wt_energy=renewable_kw["WT"] * dt,
        mt_energy=float(mt_output.sum()) * dt,
        charge_energy=float(charge.sum()) * dt,
        discharge_energy=float(discharge.sum()) * dt,
    )


def fitness(ledger: StateLedger) -> float:
    """The optimisation fitness of a state: revenue less payments, [$].

    The fictitious charges stay inside the revenue and payments, so the fitness rewards
    battery charging below and discharging above the fictitious price.
    """

    return ledger.revenue - ledger.payments


def daily_profit(ledgers: Sequence[StateLedger]) -> float:
    """The daily profit: the sum of the state objectives, [$]."""

    return float(sum(ledger.of for ledger in ledgers))


@dataclass(frozen=True)
class Violation:
    """A constraint violated by a system state."""

    kind: str
    """One of ``voltage``, ``current``, ``device`` or ``reverse_power``."""
    element: int
    """The bus id, line number or device node concerned, 0 for the substation."""
    value: float
    """The offending value."""
    limit: float
    """The limit breached."""

    @property
    def excess(self) -> float:
        """The distance between the value and the limit."""
        return abs(self.value - self.limit)


def check_constraints(
    pf: PowerFlowResult,
    case: CaseData,
    fleet: DeviceFleet,
    dispatch: Dispatch,
    consts: NetworkConsts = NetworkConsts(),
    reverse_constraint: bool = True,
    tolerance: float = 1e-9,
) -> list[Violation]:
    """List the constraints violated by a solved system state.

    Voltage magnitudes must lie within the network voltage limits, line currents within
    their ampacity, unit dispatches within their device limits and, when the reverse
    power constraint is on, no power may flow back through the substation.

    Args:
        pf: The converged power flow of the state.
        case: The case.
        fleet: The device fleet.
        dispatch: The dispatch of the utility units.
        consts: The network constants holding the voltage limits.
        reverse_constraint: Whether back-feed at the substation is a violation.
        tolerance: The slack allowed on every limit.

    Returns:
        The violations found, empty when the state is feasible.
    """

    violations: list[Violation] = []

    for bus, v_mag in zip(case.buses, pf.v_mag):
        if v_mag < consts.v_min - tolerance:
            violations.append(Violation("voltage", bus.id, float(v_mag), consts.v_min))
        elif v_mag > consts.v_max + tolerance:
            violations.append(Violation("voltage", bus.id, float(v_mag), consts.v_max))

    for line_no, (i_line, amp) in enumerate(zip(pf.i_line, case.ampacity), start=1):
        if i_line > amp + tolerance:
            violations.append(Violation("current", line_no, float(i_line), float(amp)))

    for bess, p_c, p_d in zip(
        fleet.batteries, dispatch.bess_charge, dispatch.bess_discharge
    ):
        if p_c < -tolerance or p_c > bess.p_max_c + tolerance:
            violations.append(Violation("device", bess.node, float(p_c), bess.p_max_c))
        if p_d < -tolerance or p_d > bess.p_max_d + tolerance:
            violations.append(Violation("device", bess.node, float(p_d), bess.p_max_d))
        if p_c > tolerance and p_d > tolerance:
            violations.append(Violation("device", bess.node, float(p_c * p_d), 0.0))

    for mt, output in zip(fleet.microturbines, dispatch.mt_output):
        cap = mt.rating - mt.reserve
        if output < -tolerance or output > cap + tolerance:
            violations.append(Violation("device", mt.node, float(output), cap))

    if reverse_constraint and pf.p_rev > tolerance:
        violations.append(Violation("reverse_power", 0, pf.p_rev, 0.0))

    return violations


def load_deviation_index(profile: ArrayLike) -> float:
    """The load deviation index: the population standard deviation of a profile.

    Args:
        profile: The demand in each state, [kW].

    Raises:
        ValueError: if the profile has fewer than two states.
    """

    values = np.asarray(profile, dtype=float)
    if values.size < 2:
        to_raise = ValueError("Load deviation index needs at least two states")
        LOGGER.critical(to_raise)
        raise to_raise

    return float(values.std())
