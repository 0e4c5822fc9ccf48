"""Collection of fixtures to assist the testing of the economics model."""

from dataclasses import dataclass

import numpy as np
import pytest


@dataclass
class ScheduledDay:
    """The pieces of a hand scheduled day on the small case."""

    fleet: object
    labels: tuple[str, ...]
    ledgers: list
    dispatches: list
    pf_results: list
    soc: object


@pytest.fixture
def fixture_day_prices():
    """A four state price day."""
    from feeder_scheduler.models.dms.plan import PriceSignal

    return PriceSignal.from_grid([0.04, 0.05, 0.08, 0.07])


@pytest.fixture
def fixture_scheduled_day(
    fixture_small_case, fixture_small_fleet, fixture_day_prices, fixture_conditions
):
    """A four state day on the small case, charging early and discharging late."""
    from feeder_scheduler.models.der_models.devices import Dispatch
    from feeder_scheduler.models.der_models.storage import SocTrace, soc_update
    from feeder_scheduler.models.economics.ledger import bus_injections, state_profit
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = fixture_small_case
    fleet = fixture_small_fleet.with_fc_price(fixture_day_prices.mean_price)
    bess = fleet.batteries[0]

    dispatches = [
        Dispatch(np.array([200.0]), np.array([0.0]), np.array([0.0])),
        Dispatch(np.array([0.0]), np.array([0.0]), np.array([0.0])),
        Dispatch(np.array([0.0]), np.array([150.0]), np.array([0.0])),
        Dispatch(np.array([0.0]), np.array([0.0]), np.array([0.0])),
    ]

    ledgers, pf_results, soc_values = [], [], []
    soc = bess.soc_init
    for cond, dispatch in zip(fixture_conditions(fixture_day_prices), dispatches):
        pf = run_power_flow(case, *bus_injections(case, fleet, cond, dispatch))
        ledgers.append(state_profit(case, fleet, dispatch, cond, pf))
        pf_results.append(pf)
        soc = soc_update(
            bess, soc, dispatch.bess_charge[0], dispatch.bess_discharge[0], cond.dt
        )
        soc_values.append([soc])

    return ScheduledDay(
        fleet=fleet,
        labels=("00:00", "01:00", "02:00", "03:00"),
        ledgers=ledgers,
        dispatches=dispatches,
        pf_results=pf_results,
        soc=SocTrace(initial=np.array([bess.soc_init]), values=np.array(soc_values)),
    )


@pytest.fixture
def fixture_day_report(fixture_scheduled_day):
    """The report of the hand scheduled day."""
    from feeder_scheduler.models.economics.report import build_report

    day = fixture_scheduled_day
    return build_report(
        day.ledgers,
        day.dispatches,
        day.pf_results,
        day.soc,
        day.fleet,
        day.labels,
        strategy="mpas",
        seed=7,
        peak_states=(2, 3),
        digest="abc",
    )
