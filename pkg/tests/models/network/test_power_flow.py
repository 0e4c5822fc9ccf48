"""Test module for network.power_flow.py."""

from logging import CRITICAL

import numpy as np
import pytest

from feeder_scheduler.core.exceptions import DivergenceError


def test_run_power_flow_case33(fixture_case33):
    """Check the base case of the 33-bus feeder against published values."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = fixture_case33
    result = run_power_flow(case, case.p_load, case.q_load)

    assert result.converged
    assert result.p_loss == pytest.approx(202.67, rel=0.01)
    assert result.v_min == pytest.approx(0.9131, abs=0.001)
    assert int(np.argmin(result.v_mag)) == case.bus_index[18]
    assert result.v_mag[case.root] == 1.0
    assert result.p_grid == pytest.approx(3715.0 + result.p_loss, rel=1e-6)
    assert result.q_grid == pytest.approx(2300.0 + result.q_loss, rel=1e-6)
    assert result.delta_1 > result.delta_2
    assert result.p_rev == 0.0


def test_run_power_flow_no_load(fixture_small_case):
    """Check that an unloaded feeder sits at the substation voltage."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    result = run_power_flow(fixture_small_case, np.zeros(4), np.zeros(4))

    np.testing.assert_allclose(result.v_mag, 1.0)
    np.testing.assert_allclose(result.i_line, 0.0)
    assert result.p_loss == 0.0
    assert result.iterations == 1


def test_run_power_flow_line_currents(fixture_small_case):
    """Check that the head line carries the sum of the lateral currents."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = fixture_small_case
    result = run_power_flow(case, case.p_load, case.q_load)

    # Currents add as phasors, so magnitudes only bound the head current
    assert result.i_line[0] <= result.i_line[1] + result.i_line[2] + 1e-9
    assert result.i_line[0] > max(result.i_line[1], result.i_line[2])
    assert result.p_loss > 0
    assert np.all(result.v_mag[case.non_root] < 1.0)


def test_run_power_flow_export(fixture_small_case):
    """Check that local export drives reverse power at the substation."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = fixture_small_case
    p_kw = np.array([0.0, 0.0, -900.0, -300.0])
    result = run_power_flow(case, p_kw, np.zeros(4))

    assert result.p_grid < 0
    assert result.delta_2 > result.delta_1
    assert result.p_rev == pytest.approx(-result.p_grid)
    assert np.all(result.v_mag[case.non_root] > 1.0)


def test_run_power_flow_bad_shape(caplog, fixture_small_case):
    """Check that demand vectors must match the buses."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    with pytest.raises(ValueError, match="one entry per bus"):
        run_power_flow(fixture_small_case, np.zeros(3), np.zeros(4))

    assert caplog.records[-1].levelno == CRITICAL


def test_run_power_flow_divergence(fixture_small_case):
    """Check that hitting the sweep cap raises a divergence error."""
    from feeder_scheduler.models.network.constants import NetworkConsts
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = fixture_small_case

    with pytest.raises(DivergenceError, match="did not converge in 1 sweeps"):
        run_power_flow(
            case, case.p_load, case.q_load, NetworkConsts(max_iterations=1)
        )


def test_run_power_flow_overload_diverges(fixture_small_case):
    """Check that a demand beyond the feeder capability does not converge."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    p_kw = np.array([0.0, 0.0, 1e9, 0.0])

    with pytest.raises(DivergenceError):
        run_power_flow(fixture_small_case, p_kw, np.zeros(4))


@pytest.mark.parametrize(
    "delta_1,delta_2,p_grid,expected",
    [
        pytest.param(0.0, -0.01, 500.0, 0.0, id="importing"),
        pytest.param(0.0, -0.01, -50.0, 0.0, id="angle_order_wins"),
        pytest.param(0.0, 0.01, -120.0, 120.0, id="exporting"),
        pytest.param(0.0, 0.001, 40.0, 0.0, id="high_r_over_x"),
    ],
)
def test_reverse_power(delta_1, delta_2, p_grid, expected):
    """Check the reverse power measure."""
    from feeder_scheduler.models.network.power_flow import (
        PowerFlowResult,
        reverse_power,
    )

    result = PowerFlowResult(
        v_mag=np.ones(2),
        v_ang=np.array([delta_1, delta_2]),
        i_line=np.zeros(1),
        p_loss=0.0,
        q_loss=0.0,
        p_grid=p_grid,
        q_grid=0.0,
        delta_1=delta_1,
        delta_2=delta_2,
        converged=True,
        iterations=1,
    )

    assert reverse_power(result) == expected


@pytest.mark.parametrize(
    "p_kw,q_kvar,r_ohm,x_ohm",
    [
        pytest.param(500.0, 300.0, 0.5, 0.3, id="lagging"),
        pytest.param(1500.0, 0.0, 0.2, 0.4, id="unity"),
        pytest.param(-800.0, 200.0, 1.0, 0.5, id="export"),
    ],
)
def test_run_power_flow_two_bus_loss(p_kw, q_kvar, r_ohm, x_ohm):
    """Check the loss of a single line against the closed form value."""
    from feeder_scheduler.models.network.case import load_case
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = load_case(
        "[bus]\nid,p_kw,q_kvar\n1,0,0\n"
        f"2,{p_kw},{q_kvar}\n"
        "[line]\nfrom,to,r_ohm,x_ohm,amp\n"
        f"1,2,{r_ohm},{x_ohm},400\n"
    )
    result = run_power_flow(case, case.p_load, case.q_load)

    # Loss in kW from ohms, kW, kvar and the receiving end voltage in kV
    v_kv = result.v_mag[1] * 12.66
    expected = r_ohm * (p_kw**2 + q_kvar**2) / v_kv**2 / 1000.0

    assert result.p_loss == pytest.approx(expected, rel=1e-6)
    assert result.q_loss == pytest.approx(expected * x_ohm / r_ohm, rel=1e-6)
    assert result.p_grid == pytest.approx(p_kw + expected, rel=1e-6)


def test_run_power_flow_monotone_in_load(fixture_case33):
    """Check that a heavier load never lowers the loss or raises the lowest voltage."""
    from feeder_scheduler.models.network.power_flow import run_power_flow

    case = fixture_case33
    results = [
        run_power_flow(case, scale * case.p_load, scale * case.q_load)
        for scale in np.linspace(0.2, 1.2, 11)
    ]
    losses = np.array([result.p_loss for result in results])
    v_mins = np.array([result.v_min for result in results])

    assert np.all(np.diff(losses) >= 0)
    assert np.all(np.diff(v_mins) <= 0)
