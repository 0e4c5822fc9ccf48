"""Test module for der_models.storage.py."""

from logging import CRITICAL

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats

from feeder_scheduler.core.exceptions import ConsistencyError
from tests.conftest import log_check


@pytest.fixture
def fixture_bess():
    """A 3000 kWh battery with the default parameters."""
    from feeder_scheduler.models.der_models.devices import Bess

    return Bess(
        node=17,
        capacity=3000.0,
        p_max_c=500.0,
        p_max_d=500.0,
        soc_min=0.1,
        soc_max=1.0,
        soc_init=0.1,
        eta_c=np.sqrt(0.85),
        eta_d=np.sqrt(0.85),
        om_price=0.0015,
    )


@pytest.mark.parametrize(
    "soc_prev,requested,dt,expected",
    [
        pytest.param(0.1, 200.0, 1.0, 200.0, id="within_rating"),
        pytest.param(0.1, 800.0, 1.0, 500.0, id="rating_limit"),
        pytest.param(0.95, 500.0, 1.0, 0.05 * 3000 / np.sqrt(0.85), id="soc_limit"),
        pytest.param(1.0, 500.0, 1.0, 0.0, id="full"),
        pytest.param(0.5, -20.0, 1.0, 0.0, id="negative_request"),
        pytest.param(0.98, 500.0, 0.5, 0.02 * 3000 / (np.sqrt(0.85) * 0.5), id="dt"),
    ],
)
def test_clamp_charge(fixture_bess, soc_prev, requested, dt, expected):
    """Check the charging clamp."""
    from feeder_scheduler.models.der_models.storage import clamp_charge

    assert clamp_charge(fixture_bess, soc_prev, requested, dt) == pytest.approx(
        expected
    )


@pytest.mark.parametrize(
    "soc_prev,requested,expected",
    [
        pytest.param(1.0, 300.0, 300.0, id="within_rating"),
        pytest.param(1.0, 900.0, 500.0, id="rating_limit"),
        pytest.param(0.15, 500.0, 0.05 * 3000 * np.sqrt(0.85), id="soc_limit"),
        pytest.param(0.1, 500.0, 0.0, id="empty"),
    ],
)
def test_clamp_discharge(fixture_bess, soc_prev, requested, expected):
    """Check the discharging clamp."""
    from feeder_scheduler.models.der_models.storage import clamp_discharge

    assert clamp_discharge(fixture_bess, soc_prev, requested, 1.0) == pytest.approx(
        expected
    )


def test_soc_update_values(fixture_bess):
    """Check the state of charge arithmetic."""
    from feeder_scheduler.models.der_models.storage import soc_update

    eta = np.sqrt(0.85)

    assert soc_update(fixture_bess, 0.1, 500.0, 0.0, 1.0) == pytest.approx(
        0.1 + eta * 500 / 3000
    )
    assert soc_update(fixture_bess, 0.9, 0.0, 500.0, 1.0) == pytest.approx(
        0.9 - 500 / (eta * 3000)
    )
    assert soc_update(fixture_bess, 0.4, 0.0, 0.0, 1.0) == 0.4


def test_soc_update_round_trip(fixture_bess):
    """Check that a full cycle returns the round trip share of the energy."""
    from feeder_scheduler.models.der_models.storage import (
        clamp_discharge,
        soc_update,
    )

    soc = soc_update(fixture_bess, 0.1, 500.0, 0.0, 1.0)
    delivered = clamp_discharge(fixture_bess, soc, 500.0, 1.0)
    soc = soc_update(fixture_bess, soc, 0.0, delivered, 1.0)

    assert delivered == pytest.approx(0.85 * 500.0)
    assert soc == pytest.approx(0.1)


@pytest.mark.parametrize(
    "soc_prev,p_c,p_d,message",
    [
        pytest.param(
            0.5, 100.0, 100.0, "charges and discharges in the same state", id="both"
        ),
        pytest.param(0.99, 500.0, 0.0, "left [0.1, 1.0]", id="overcharge"),
        pytest.param(0.11, 0.0, 500.0, "left [0.1, 1.0]", id="overdischarge"),
    ],
)
def test_soc_update_errors(caplog, fixture_bess, soc_prev, p_c, p_d, message):
    """Check that infeasible updates raise."""
    from feeder_scheduler.models.der_models.storage import soc_update

    with pytest.raises(ConsistencyError, match=message.replace("[", r"\[")):
        soc_update(fixture_bess, soc_prev, p_c, p_d, 1.0)

    log_check(caplog, ((CRITICAL, message),))


@settings(deadline=None)
@given(
    soc_prev=floats(min_value=0.1, max_value=1.0),
    charge=floats(min_value=0.0, max_value=2000.0),
    discharge=floats(min_value=0.0, max_value=2000.0),
)
def test_clamped_updates_stay_in_band(soc_prev, charge, discharge):
    """Check that clamped requests never leave the state of charge band."""
    from feeder_scheduler.models.der_models.devices import Bess
    from feeder_scheduler.models.der_models.storage import (
        clamp_charge,
        clamp_discharge,
        soc_update,
    )

    bess = Bess(
        node=1,
        capacity=3000.0,
        p_max_c=500.0,
        p_max_d=500.0,
        soc_min=0.1,
        soc_max=1.0,
        soc_init=0.1,
        eta_c=np.sqrt(0.85),
        eta_d=np.sqrt(0.85),
        om_price=0.0,
    )

    p_c = clamp_charge(bess, soc_prev, charge, 1.0)
    soc_c = soc_update(bess, soc_prev, p_c, 0.0, 1.0)
    p_d = clamp_discharge(bess, soc_prev, discharge, 1.0)
    soc_d = soc_update(bess, soc_prev, 0.0, p_d, 1.0)

    assert 0.0 <= p_c <= min(charge, 500.0)
    assert 0.0 <= p_d <= min(discharge, 500.0)
    assert 0.1 <= soc_c <= 1.0
    assert 0.1 <= soc_d <= 1.0
    assert soc_c >= soc_prev >= soc_d


def test_soc_trace(fixture_bess):
    """Check the state of charge trace and its band check."""
    from feeder_scheduler.models.der_models.storage import SocTrace

    trace = SocTrace(
        initial=np.array([0.1]), values=np.array([[0.3], [0.6], [0.2]])
    )

    assert trace.final.tolist() == [0.2]
    trace.check((fixture_bess,))

    empty = SocTrace(initial=np.array([0.1]), values=np.zeros((0, 1)))
    assert empty.final.tolist() == [0.1]

    bad = SocTrace(initial=np.array([0.1]), values=np.array([[0.05]]))
    with pytest.raises(ConsistencyError, match="leaves"):
        bad.check((fixture_bess,))
