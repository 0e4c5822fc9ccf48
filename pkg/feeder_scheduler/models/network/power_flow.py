"""The :mod:`~feeder_scheduler.models.network.power_flow` submodule solves the power
flow of a radial feeder using a backward/forward sweep.

The sweep works in per unit on the configured voltage and power bases. The branch
currents follow from the bus current injections through the bus-injection-to-branch-
current matrix (``BIBC``) of the case, and the bus voltage drops from the branch
currents through the transpose of that matrix scaled by the line impedances. The two
steps combine into a single matrix, so each sweep is:

.. math::

    I_k = \\left(\\frac{S_k}{V_k}\\right)^*, \\qquad
    V = V_0 - \\mathrm{BIBC}^T \\, \\mathrm{diag}(Z) \\, \\mathrm{BIBC} \\, I

Sweeps stop when the largest change in bus voltage falls below the configured
tolerance. Each evaluation is a pure function of the case and the bus demands, so
states and candidate schedules can be solved concurrently.
"""  # noqa: D205, D415

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from feeder_scheduler.core.exceptions import DivergenceError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.network.case import CaseData
from feeder_scheduler.models.network.constants import NetworkConsts


@dataclass(frozen=True)
class PowerFlowResult:
    """The solution of a single power flow."""

    v_mag: np.ndarray
    """Bus voltage magnitudes in bus order, [p.u.]."""
    v_ang: np.ndarray
    """Bus voltage angles in bus order, [rad]."""
    i_line: np.ndarray
    """Line current magnitudes in line order, [A]."""
    p_loss: float
    """Total active line loss, [kW]."""
    q_loss: float
    """Total reactive line loss, [kVar]."""
    p_grid: float
    """Active power drawn from the substation, negative when exporting, [kW]."""
    q_grid: float
    """Reactive power drawn from the substation, [kVar]."""
    delta_1: float
    """Voltage angle at the substation, [rad]."""
    delta_2: float
    """Voltage angle at the far end of the first feeder line, [rad]."""
    converged: bool
    """Whether the sweep converged."""
    iterations: int
    """The number of sweeps used."""

    @property
    def v_min(self) -> float:
        """The lowest bus voltage magnitude, [p.u.]."""
        return float(self.v_mag.min())

    @property
    def p_rev(self) -> float:
        """The power fed back into the grid at the substation, [kW]."""
        return reverse_power(self)


def _dlf_matrix(case: CaseData, consts: NetworkConsts) -> np.ndarray:
    """Build the direct load flow matrix of a case in per unit."""

    z_base = consts.base_kv**2 / consts.base_mva
    z_line = (case.r + 1j * case.x) / z_base
    return case.bibc.T @ (z_line[:, None] * case.bibc)


def run_power_flow(
    case: CaseData,
    p_kw: ArrayLike,
    q_kvar: ArrayLike,
    consts: NetworkConsts = NetworkConsts(),
) -> PowerFlowResult:
    """Solve the power flow of a radial case.

    Demands are net values: loads and charging batteries are positive, local
    generation and discharging batteries negative. The substation bus demand is
    ignored.

    Args:
        case: The radial case.
        p_kw: Net active demand per bus in bus order, [kW].
        q_kvar: Net reactive demand per bus in bus order, [kVar].
        consts: The network constants.

    Raises:
        ValueError: if the demand vectors do not match the case buses.
        DivergenceError: if the sweep does not converge within the iteration cap.
    """

    p_kw = np.asarray(p_kw, dtype=float)
    q_kvar = np.asarray(q_kvar, dtype=float)

    if p_kw.shape != (case.n_buses,) or q_kvar.shape != (case.n_buses,):
        to_raise = ValueError(
            f"Demand vectors must have one entry per bus ({case.n_buses})"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    s_base_kw = consts.base_mva * 1000.0
    i_base = consts.base_mva * 1e6 / (np.sqrt(3) * consts.base_kv * 1e3)
    v_0 = complex(consts.substation_voltage)

    non_root = case.non_root
    s_bus = (p_kw[non_root] + 1j * q_kvar[non_root]) / s_base_kw
    dlf = _dlf_matrix(case, consts)

    voltage = np.full(len(non_root), v_0, dtype=complex)
    converged = False
    iteration = 0

    with np.errstate(all="ignore"):
        for iteration in range(1, consts.max_iterations + 1):
            current = np.conj(s_bus / voltage)
            updated = v_0 - dlf @ current
            change = float(np.max(np.abs(updated - voltage), initial=0.0))
            voltage = updated

            if not np.isfinite(change):
                break

            LOGGER.debug(
                "Sweep %i: largest voltage change %.3e p.u.", iteration, change
            )
            if change < consts.tolerance:
                converged = True
                break

    if not converged:
        to_raise = DivergenceError(
            f"Power flow did not converge in {iteration} sweeps"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    # Final pass: currents and voltages consistent with the network equations
    current = np.conj(s_bus / voltage)
    voltage = v_0 - dlf @ current
    branch = case.bibc @ current

    v_full = np.empty(case.n_buses, dtype=complex)
    v_full[case.root] = v_0
    v_full[non_root] = voltage

    loss = np.sum(np.abs(branch) ** 2 * (case.r + 1j * case.x))
    loss *= s_base_kw * consts.base_mva / consts.base_kv**2
    s_grid = v_0 * np.conj(current.sum()) * s_base_kw

    return PowerFlowResult(
        v_mag=np.abs(v_full),
        v_ang=np.angle(v_full),
        i_line=np.abs(branch) * i_base,
        p_loss=float(loss.real),
        q_loss=float(loss.imag),
        p_grid=float(s_grid.real),
        q_grid=float(s_grid.imag),
        delta_1=float(np.angle(v_0)),
        delta_2=float(np.angle(v_full[case.head_bus])),
        converged=True,
        iterations=iteration,
    )


def reverse_power(pf: PowerFlowResult) -> float:
    """Measure the power fed back through the substation.

    When the substation voltage angle leads the head of the feeder, power flows into
    the feeder and the result is zero. Otherwise the back-feed is the active power
    leaving the feeder at the substation. On feeders with a high resistance to
    reactance ratio the angle order alone does not settle the direction of active
    power, so only a negative substation draw counts as back-feed.

    Args:
        pf: A converged power flow result.

    Returns:
        The reverse power, [kW].
    """

    if pf.delta_1 > pf.delta_2:
        return 0.0

    return max(0.0, -pf.p_grid)
