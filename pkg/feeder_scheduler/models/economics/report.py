"""The :mod:`~feeder_scheduler.models.economics.report` submodule aggregates a day of
state ledgers into a :class:`~feeder_scheduler.models.economics.report.DayReport` and
compares the reports of two runs.

The economic equation
=====================

The daily profit is the sum of the state objectives. As the fictitious charges cancel
within each state, the report lists revenue and payments without them, and the daily
profit closes the equation: payments plus profit equal revenue.

The energy equation
===================

Energy purchased (grid, solar and wind) plus energy supplied by the utility units
(microturbines and battery discharge) must equal the energy consumed (customer demand,
feeder losses and battery charging). A report whose equation does not close within the
energy tolerance is rejected with an
:class:`~feeder_scheduler.core.exceptions.AccountingError`.

Load profiles
=============

Three demand profiles are reported: the customer load, the load net of renewable
output, and the net load once the microturbine and battery dispatches are also applied.
Their load deviation indices and the change in peak, valley and mean demand between the
first and the last profile describe how the schedule reshapes the demand.
"""  # noqa: D205, D415

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from feeder_scheduler.core.exceptions import AccountingError, ComparisonError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.der_models.devices import DeviceFleet, Dispatch
from feeder_scheduler.models.der_models.storage import SocTrace
from feeder_scheduler.models.economics.constants import EconomicsConsts
from feeder_scheduler.models.economics.ledger import (
    StateLedger,
    daily_profit,
    load_deviation_index,
)
from feeder_scheduler.models.network.power_flow import PowerFlowResult

REVENUE_ITEMS: tuple[str, ...] = ("billing", "losses")
"""Revenue items of the economic equation."""

PAYMENT_ITEMS: tuple[str, ...] = ("grid", "spv", "wt", "mt_fuel", "mt_om", "bess_om")
"""Payment items of the economic equation."""

ENERGY_ITEMS: dict[str, tuple[str, ...]] = {
    "purchased": ("grid", "spv", "wt"),
    "supplied": ("mt", "bess_discharge"),
    "consumed": ("billing", "losses", "bess_charge"),
}
"""Items of each side of the energy equation."""

_ENERGY_FIELDS: dict[str, str] = {
    "grid": "grid_energy",
    "spv": "spv_energy",
    "wt": "wt_energy",
    "mt": "mt_energy",
    "bess_discharge": "discharge_energy",
    "billing": "load_energy",
    "losses": "loss_energy",
    "bess_charge": "charge_energy",
}


def _share(part: float, total: float) -> float:
    """Percentage share of a part in a total, 0 for an empty total."""
    return 100.0 * part / total if total else 0.0


def _change(before: float, after: float) -> float:
    """Percentage change between two values, 0 when the first is 0."""
    return 100.0 * (after - before) / abs(before) if before else 0.0


@dataclass(frozen=True)
class DayReport:
    """The economic and energy report of a scheduled day."""

    strategy: str
    """The battery scheduling strategy."""
    seed: int | None
    """The seed of the run."""
    digest: str
    """Fingerprint of the run inputs."""
    labels: tuple[str, ...]
    """State start time labels."""
    dt: float
    """State duration, [h]."""
    ledgers: tuple[StateLedger, ...]
    """The state ledgers."""
    bess_nodes: tuple[int, ...]
    """Nodes hosting the batteries."""
    mt_nodes: tuple[int, ...]
    """Nodes hosting the microturbines."""
    bess_charge: np.ndarray
    """Battery charging power per state and battery, [kW]."""
    bess_discharge: np.ndarray
    """Battery discharging power per state and battery, [kW]."""
    mt_output: np.ndarray
    """Microturbine output per state and unit, [kW]."""
    soc: SocTrace
    """State of charge trace of the batteries."""
    v_min: np.ndarray
    """Lowest bus voltage in each state, [p.u.]."""
    load_profile: np.ndarray
    """Customer demand in each state, [kW]."""
    renewable_profile: np.ndarray
    """Customer demand net of renewable output in each state, [kW]."""
    net_load_profile: np.ndarray
    """Demand net of every distributed unit in each state, [kW]."""
    dpf: float
    """The daily profit, [$]."""
    revenue: dict[str, float]
    """Revenue items, [$]."""
    payments: dict[str, float]
    """Payment items, [$]."""
    energy: dict[str, dict[str, float]]
    """Energy equation items by side, [kWh]."""
    ldi: dict[str, float]
    """Load deviation index of each demand profile, [kW]."""
    demand_shift: dict[str, float | str]
    """Peak, valley and mean demand changes and the peak and valley times."""
    indicators: dict[str, float]
    """Profit margin, self adequacy and on-peak DER share, [%]."""
    violations: int = 0
    """The number of constraint violations left in the schedule."""
    currency_decimals: int = 2
    """Decimal places used when reporting currency values."""
    energy_decimals: int = 3
    """Decimal places used when reporting energy values."""

    @property
    def n_states(self) -> int:
        """The number of system states."""
        return len(self.labels)

    @property
    def total_revenue(self) -> float:
        """Total revenue without fictitious charges, [$]."""
        return sum(self.revenue.values())

    @property
    def total_payments(self) -> float:
        """Total payments without fictitious charges, [$]."""
        return sum(self.payments.values())

    @property
    def total_energy(self) -> float:
        """Energy handled by the feeder: purchased plus supplied, [kWh]."""
        return sum(self.energy["purchased"].values()) + sum(
            self.energy["supplied"].values()
        )

    @property
    def total_losses(self) -> float:
        """Feeder losses over the day, [kWh]."""
        return self.energy["consumed"]["losses"]

    def to_dict(self) -> dict:
        """Return the report as a dictionary of rounded values."""

        cur, kwh = self.currency_decimals, self.energy_decimals

        return {
            "strategy": self.strategy,
            "seed": self.seed,
            "digest": self.digest,
            "n_states": self.n_states,
            "daily_profit": round(self.dpf, cur),
            "economic_equation": {
                "revenue": {key: round(val, cur) for key, val in self.revenue.items()},
                "payments": {
                    key: round(val, cur) for key, val in self.payments.items()
                },
                "revenue_share": {
                    key: round(_share(val, self.total_revenue), 2)
                    for key, val in self.revenue.items()
                },
                "payment_share": {
                    key: round(_share(val, self.total_payments), 2)
                    for key, val in self.payments.items()
                },
            },
            "energy_equation": {
                side: {key: round(val, kwh) for key, val in items.items()}
                for side, items in self.energy.items()
            },
            "energy_share": {
                key: round(_share(val, self.total_energy), 2)
                for side in ("purchased", "supplied")
                for key, val in self.energy[side].items()
            },
            "load_deviation_index": {
                key: round(val, kwh) for key, val in self.ldi.items()
            },
            "demand_shift": {
                key: round(val, 2) if isinstance(val, float) else val
                for key, val in self.demand_shift.items()
            },
            "indicators": {key: round(val, 2) for key, val in self.indicators.items()},
            "final_soc": {
                str(node): round(float(soc), 6)
                for node, soc in zip(self.bess_nodes, self.soc.final)
            },
            "violations": self.violations,
        }

    def to_json(self) -> str:
        """Serialise the report as JSON."""
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        """Render the report as aligned text tables."""

        data = self.to_dict()
        econ = data["economic_equation"]

        revenue = pd.DataFrame(
            {"$": econ["revenue"], "share %": econ["revenue_share"]}
        )
        payments = pd.DataFrame(
            {"$": econ["payments"], "share %": econ["payment_share"]}
        )
        energy = pd.DataFrame(
            [
                (side, key, val)
                for side, items in data["energy_equation"].items()
                for key, val in items.items()
            ],
            columns=["side", "item", "kWh"],
        )
        ldi = pd.Series(data["load_deviation_index"], name="kW")

        sections = [
            f"Strategy: {self.strategy}    Seed: {self.seed}",
            f"Daily profit: {data['daily_profit']:.{self.currency_decimals}f} $",
            "",
            "Revenue",
            revenue.to_string(),
            "",
            "Payments",
            payments.to_string(),
            "",
            "Energy equation",
            energy.to_string(index=False),
            "",
            "Load deviation index",
            ldi.to_string(),
            "",
            "Demand shift",
            pd.Series(data["demand_shift"], dtype=object).to_string(),
            "",
            "Indicators",
            pd.Series(data["indicators"]).to_string(),
            "",
            "Final state of charge",
            pd.Series(data["final_soc"], dtype=float).to_string(),
        ]
        return "\n".join(sections) + "\n"

    def series_frame(self) -> pd.DataFrame:
        """Return the per-state series of the day, one row per state."""

        frame = pd.DataFrame(
            {
                "profit": [ledger.of for ledger in self.ledgers],
                "load": self.load_profile,
                "load_net_renewables": self.renewable_profile,
                "net_load": self.net_load_profile,
                "p_grid": [ledger.grid_energy / self.dt for ledger in self.ledgers],
                "p_loss": [ledger.loss_energy / self.dt for ledger in self.ledgers],
                "v_min": self.v_min,
            },
            index=pd.Index(self.labels, name="state"),
        )

        for col, node in enumerate(self.bess_nodes):
            frame[f"bess_{node}_charge"] = self.bess_charge[:, col]
            frame[f"bess_{node}_discharge"] = self.bess_discharge[:, col]
            frame[f"bess_{node}_soc"] = self.soc.values[:, col]
        for col, node in enumerate(self.mt_nodes):
            frame[f"mt_{node}_output"] = self.mt_output[:, col]

        return frame


def _demand_shift(
    before: np.ndarray, after: np.ndarray, labels: Sequence[str]
) -> dict[str, float | str]:
    """Compare the peak, valley and mean of two demand profiles."""

    return {
        "peak_change": _change(float(before.max()), float(after.max())),
        "valley_change": _change(float(before.min()), float(after.min())),
        "mean_change": _change(float(before.mean()), float(after.mean())),
        "peak_before": labels[int(before.argmax())],
        "peak_after": labels[int(after.argmax())],
        "valley_before": labels[int(before.argmin())],
        "valley_after": labels[int(after.argmin())],
    }


def build_report(
    ledgers: Sequence[StateLedger],
    dispatches: Sequence[Dispatch],
    pf_results: Sequence[PowerFlowResult],
    soc: SocTrace,
    fleet: DeviceFleet,
    labels: Sequence[str],
    dt: float = 1.0,
    strategy: str = "mpas",
    seed: int | None = None,
    peak_states: Sequence[int] = (),
    digest: str = "",
    violations: int = 0,
    consts: EconomicsConsts = EconomicsConsts(),
) -> DayReport:
    """Build the report of a scheduled day.

    Args:
        ledgers: The state ledgers, one per state.
        dispatches: The state dispatches, one per state.
        pf_results: The state power flows, one per state.
        soc: The state of charge trace of the day.
        fleet: The device fleet.
        labels: The state labels.
        dt: The state duration, [h].
        strategy: The battery scheduling strategy.
        seed: The seed of the run.
        peak_states: The on-peak (discharge) states used for the DER share.
        digest: The input fingerprint of the run.
        violations: The number of constraint violations left in the schedule.
        consts: The accounting tolerances.

    Raises:
        ValueError: if the inputs do not cover the same states.
        AccountingError: if the energy or economic equation does not close.
    """

    n_states = len(labels)
    if not (len(ledgers) == len(dispatches) == len(pf_results) == n_states):
        to_raise = ValueError("Report inputs must have one entry per state")
        LOGGER.critical(to_raise)
        raise to_raise

    revenue = {
        key: float(sum(getattr(ledger, key) for ledger in ledgers))
        for key in REVENUE_ITEMS
    }
    payments = {
        key: float(sum(getattr(ledger, key) for ledger in ledgers))
        for key in PAYMENT_ITEMS
    }
    energy = {
        side: {
            key: float(sum(getattr(ledger, _ENERGY_FIELDS[key]) for ledger in ledgers))
            for key in items
        }
        for side, items in ENERGY_ITEMS.items()
    }

    dpf = daily_profit(ledgers)
    economic_gap = sum(revenue.values()) - sum(payments.values()) - dpf
    if abs(economic_gap) > consts.currency_tolerance:
        to_raise = AccountingError(
            f"Economic equation does not close: gap of {economic_gap:.3e} $"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    energy_in = sum(energy["purchased"].values()) + sum(energy["supplied"].values())
    energy_out = sum(energy["consumed"].values())
    if abs(energy_in - energy_out) > consts.energy_tolerance:
        to_raise = AccountingError(
            f"Energy equation does not close: {energy_in:.6f} kWh in, "
            f"{energy_out:.6f} kWh out"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    def _per_state(fieldname: str) -> np.ndarray:
        return np.array([getattr(ledger, fieldname) for ledger in ledgers]) / dt

    load_profile = _per_state("load_energy")
    renewable_profile = (
        load_profile - _per_state("spv_energy") - _per_state("wt_energy")
    )
    net_load_profile = (
        renewable_profile
        - _per_state("mt_energy")
        - _per_state("discharge_energy")
        + _per_state("charge_energy")
    )

    local = energy_in - energy["purchased"]["grid"]
    peak = list(peak_states)
    peak_load = float(load_profile[peak].sum()) * dt
    peak_der = float((load_profile - net_load_profile)[peak].sum()) * dt

    total_revenue = sum(revenue.values())
    labels = tuple(labels)

    report = DayReport(
        strategy=strategy,
        seed=seed,
        digest=digest,
        labels=labels,
        dt=dt,
        ledgers=tuple(ledgers),
        bess_nodes=tuple(bess.node for bess in fleet.batteries),
        mt_nodes=tuple(mt.node for mt in fleet.microturbines),
        bess_charge=np.array([d.bess_charge for d in dispatches]).reshape(
            n_states, len(fleet.batteries)
        ),
        bess_discharge=np.array([d.bess_discharge for d in dispatches]).reshape(
            n_states, len(fleet.batteries)
        ),
        mt_output=np.array([d.mt_output for d in dispatches]).reshape(
            n_states, len(fleet.microturbines)
        ),
        soc=soc,
        v_min=np.array([pf.v_min for pf in pf_results]),
        load_profile=load_profile,
        renewable_profile=renewable_profile,
        net_load_profile=net_load_profile,
        dpf=dpf,
        revenue=revenue,
        payments=payments,
        energy=energy,
        ldi={
            "load": load_deviation_index(load_profile),
            "load_net_renewables": load_deviation_index(renewable_profile),
            "net_load": load_deviation_index(net_load_profile),
        },
        demand_shift=_demand_shift(load_profile, net_load_profile, labels),
        indicators={
            "profit_margin": _share(dpf, total_revenue),
            "self_adequacy": _share(local, energy_in),
            "peak_der_share": _share(peak_der, peak_load),
        },
        violations=violations,
        currency_decimals=consts.currency_decimals,
        energy_decimals=consts.energy_decimals,
    )

    LOGGER.info(
        "Day report built (%s): daily profit %.2f $, losses %.2f kWh",
        strategy,
        dpf,
        report.total_losses,
    )
    return report


@dataclass(frozen=True)
class ComparisonRow:
    """A quantity compared between two runs."""

    name: str
    """The quantity."""
    unit: str
    """The unit of the quantity."""
    a: float
    """The value in the first run."""
    b: float
    """The value in the second run."""

    @property
    def delta_pct(self) -> float | None:
        """The change from the second run to the first, [%].

        None when the second run value is 0 and the first is not.
        """

        if self.b == 0:
            return 0.0 if self.a == 0 else None
        return 100.0 * (self.a - self.b) / abs(self.b)


@dataclass(frozen=True)
class Comparison:
    """The side by side comparison of two day reports."""

    strategy_a: str
    """The strategy of the first run."""
    strategy_b: str
    """The strategy of the second run."""
    rows: tuple[ComparisonRow, ...]
    """The compared quantities."""

    def row(self, name: str) -> ComparisonRow:
        """Return a compared quantity by name.

        Raises:
            KeyError: if the quantity is not compared.
        """

        for row in self.rows:
            if row.name == name:
                return row
        raise KeyError(name)

    @property
    def profit_delta(self) -> float | None:
        """The daily profit change from the second run to the first, [%]."""
        return self.row("daily_profit").delta_pct

    @property
    def loss_delta(self) -> float | None:
        """The feeder loss change from the second run to the first, [%]."""
        return self.row("losses").delta_pct

    def to_frame(self) -> pd.DataFrame:
        """Return the comparison as a table, one row per quantity."""

        return pd.DataFrame(
            {
                "unit": [row.unit for row in self.rows],
                f"A ({self.strategy_a})": [row.a for row in self.rows],
                f"B ({self.strategy_b})": [row.b for row in self.rows],
                "delta %": [row.delta_pct for row in self.rows],
            },
            index=pd.Index([row.name for row in self.rows], name="quantity"),
        )

    def to_text(self) -> str:
        """Render the comparison as an aligned text table."""
        return self.to_frame().round(3).to_string() + "\n"

    def to_json(self) -> str:
        """Serialise the comparison as JSON."""

        rows = [
            {
                "name": row.name,
                "unit": row.unit,
                "a": row.a,
                "b": row.b,
                "delta_pct": row.delta_pct,
            }
            for row in self.rows
        ]
        return json.dumps(
            {"a": self.strategy_a, "b": self.strategy_b, "rows": rows}, indent=2
        )


def compare_reports(a: DayReport, b: DayReport) -> Comparison:
    """Compare the day reports of two runs on the same inputs.

    Deltas run from the second report to the first, so a positive profit delta means
    the first run is more profitable.

    Args:
        a: The first report.
        b: The second report.

    Raises:
        ComparisonError: if the runs used different inputs or state grids.
    """

    if a.digest != b.digest or a.labels != b.labels:
        to_raise = ComparisonError(
            "Runs with different case, profile or price inputs cannot be compared"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    rows = [
        ComparisonRow("daily_profit", "$", a.dpf, b.dpf),
        ComparisonRow("revenue", "$", a.total_revenue, b.total_revenue),
        ComparisonRow("payments", "$", a.total_payments, b.total_payments),
    ]
    rows += [
        ComparisonRow(f"payment_{key}", "$", a.payments[key], b.payments[key])
        for key in PAYMENT_ITEMS
    ]
    rows += [
        ComparisonRow(key, "kWh", a.energy[side][key], b.energy[side][key])
        for side, items in ENERGY_ITEMS.items()
        for key in items
        if key != "billing"
    ]
    rows += [
        ComparisonRow("total_energy", "kWh", a.total_energy, b.total_energy),
        ComparisonRow("ldi_net_load", "kW", a.ldi["net_load"], b.ldi["net_load"]),
        ComparisonRow(
            "self_adequacy",
            "%",
            a.indicators["self_adequacy"],
            b.indicators["self_adequacy"],
        ),
    ]

    comparison = Comparison(
        strategy_a=a.strategy, strategy_b=b.strategy, rows=tuple(rows)
    )
    LOGGER.info(
        "Runs compared: profit delta %s %%, loss delta %s %%",
        comparison.profit_delta,
        comparison.loss_delta,
    )
    return comparison
