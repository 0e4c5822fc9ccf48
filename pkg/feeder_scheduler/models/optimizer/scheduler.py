"""The :mod:`~feeder_scheduler.models.optimizer.scheduler` submodule schedules the
utility batteries and microturbines over the scheduling day.

States are optimised one at a time in chronological order. For each state the decision
vector holds one gene per battery followed by one gene per microturbine. The plan has
already fixed the battery modes, so a battery gene is its charging power in a charge
state, its discharging power in a discharge state and is held at zero in standby.
Genes are bounded by the plan limits and then repaired with the battery clamps, so
every candidate respects the device and state of charge limits. Network limits are not
repaired: voltage, line current and reverse power violations are penalised in the
fitness instead.

Once a state is optimised, the state of charge of each battery is advanced with the
chosen dispatch and handed to the next state.
"""  # noqa: D205, D415

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np
import pandas as pd
from numpy.random import SeedSequence
from tqdm import tqdm

from feeder_scheduler.core.exceptions import DivergenceError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.models.der_models.devices import DeviceFleet, Dispatch
from feeder_scheduler.models.der_models.storage import (
    SocTrace,
    clamp_charge,
    clamp_discharge,
    soc_update,
)
from feeder_scheduler.models.dms.plan import DmsPlan, Mode
from feeder_scheduler.models.economics.ledger import (
    StateConditions,
    StateLedger,
    Violation,
    bus_injections,
    check_constraints,
    fitness,
    state_profit,
)
from feeder_scheduler.models.network.case import CaseData
from feeder_scheduler.models.network.constants import NetworkConsts
from feeder_scheduler.models.network.power_flow import PowerFlowResult, run_power_flow
from feeder_scheduler.models.optimizer.constants import OptimizerConsts
from feeder_scheduler.models.optimizer.swarm import SwarmConfig, swarm_kernel


@dataclass(frozen=True)
class StateContext:
    """Everything needed to evaluate candidate dispatches for one state."""

    case: CaseData
    """The case."""
    fleet: DeviceFleet
    """The device fleet, with fictitious charge prices set."""
    cond: StateConditions
    """The uncontrolled inputs of the state."""
    plan: DmsPlan
    """The dispatch plan of the day."""
    soc_prev: np.ndarray
    """State of charge of each battery at the end of the previous state."""
    network: NetworkConsts = NetworkConsts()
    """The network constants."""
    consts: OptimizerConsts = OptimizerConsts()
    """The penalty weights."""
    reverse_constraint: bool = True
    """Whether back-feed at the substation is penalised."""

    @property
    def state(self) -> int:
        """The state index."""
        return self.cond.state


@dataclass(frozen=True)
class Individual:
    """An evaluated candidate dispatch for one state."""

    genes: np.ndarray
    """Battery genes in fleet order followed by microturbine genes, [kW]."""
    fitness: float
    """Fitness less constraint penalties, [$]."""
    dispatch: Dispatch
    """The repaired dispatch the genes decode to."""
    ledger: StateLedger
    """The utility ledger of the dispatch."""
    pf: PowerFlowResult
    """The power flow of the dispatch."""
    penalty: float = 0.0
    """The constraint penalty included in the fitness, [$]."""
    violations: tuple[Violation, ...] = ()
    """The constraints violated by the dispatch."""


def gene_bounds(ctx: StateContext) -> tuple[np.ndarray, np.ndarray]:
    """The search box of a state: zero up to the plan limit of each unit.

    Battery genes are held at zero in standby states and for fixed plans, where the
    dispatch is taken straight from the plan.
    """

    n_bess = len(ctx.fleet.batteries)
    upper = np.zeros(ctx.fleet.n_genes)

    if not ctx.plan.bess_fixed:
        for col in range(n_bess):
            if ctx.plan.mode(ctx.state, col) is not Mode.STANDBY:
                upper[col] = ctx.plan.bess_caps[ctx.state, col]

    upper[n_bess:] = ctx.plan.mt_caps[ctx.state]
    return np.zeros_like(upper), upper


def decode(genes: np.ndarray, ctx: StateContext) -> Dispatch:
    """Decode genes into a repaired dispatch.

    Battery requests are limited by the plan and then clamped to the power and energy
    the battery can actually move from its previous state of charge. Microturbine
    output is limited to its plan limit.
    """

    n_bess = len(ctx.fleet.batteries)
    charge = np.zeros(n_bess)
    discharge = np.zeros(n_bess)
    dt = ctx.cond.dt

    for col, bess in enumerate(ctx.fleet.batteries):
        cap = ctx.plan.bess_caps[ctx.state, col]
        requested = cap if ctx.plan.bess_fixed else min(max(genes[col], 0.0), cap)
        mode = ctx.plan.mode(ctx.state, col)

        if mode is Mode.CHARGE:
            charge[col] = clamp_charge(bess, ctx.soc_prev[col], requested, dt)
        elif mode is Mode.DISCHARGE:
            discharge[col] = clamp_discharge(bess, ctx.soc_prev[col], requested, dt)

    mt_output = np.clip(genes[n_bess:], 0.0, ctx.plan.mt_caps[ctx.state])

    return Dispatch(bess_charge=charge, bess_discharge=discharge, mt_output=mt_output)


def penalty(
    pf: PowerFlowResult,
    case: CaseData,
    network: NetworkConsts = NetworkConsts(),
    consts: OptimizerConsts = OptimizerConsts(),
    reverse_constraint: bool = True,
) -> float:
    """The static penalty on the network constraint violations of a state, [$].

    Voltage violations are charged per p.u. outside the limits, overloads per 100 A
    above the ampacity and back-feed per kW.
    """

    under = np.clip(network.v_min - pf.v_mag, 0.0, None).sum()
    over = np.clip(pf.v_mag - network.v_max, 0.0, None).sum()
    overload = np.clip(pf.i_line - case.ampacity, 0.0, None).sum()

    total = consts.voltage_penalty * float(under + over)
    total += consts.current_penalty * float(overload) / 100.0
    if reverse_constraint:
        total += consts.reverse_power_penalty * pf.p_rev

    return total


def evaluate(genes: np.ndarray, ctx: StateContext) -> Individual:
    """Evaluate candidate genes for a state.

    Raises:
        DivergenceError: if the power flow of the candidate does not converge.
    """

    dispatch = decode(np.asarray(genes, dtype=float), ctx)
    peak = ctx.network.peak_load_factor

    p_kw, q_kvar = bus_injections(ctx.case, ctx.fleet, ctx.cond, dispatch, peak)
    pf = run_power_flow(ctx.case, p_kw, q_kvar, ctx.network)
    ledger = state_profit(ctx.case, ctx.fleet, dispatch, ctx.cond, pf, peak)
    cost = penalty(pf, ctx.case, ctx.network, ctx.consts, ctx.reverse_constraint)

    return Individual(
        genes=np.asarray(genes, dtype=float),
        fitness=fitness(ledger) - cost,
        dispatch=dispatch,
        ledger=ledger,
        pf=pf,
        penalty=cost,
        violations=tuple(
            check_constraints(
                pf,
                ctx.case,
                ctx.fleet,
                dispatch,
                ctx.network,
                ctx.reverse_constraint,
            )
        ),
    )


def _candidate_fitness(genes: np.ndarray, ctx: StateContext) -> float:
    """Fitness of candidate genes, NaN when the power flow diverges."""

    try:
        return evaluate(genes, ctx).fitness
    except DivergenceError:
        return float("nan")


def optimize_state(ctx: StateContext, cfg: SwarmConfig = SwarmConfig()) -> Individual:
    """Find the best dispatch of a state.

    The idle dispatch is evaluated first. When the plan leaves nothing to decide, it is
    returned as is; otherwise the swarm search runs over the plan limits, starting from
    a herd that includes the idle dispatch.

    Args:
        ctx: The state context.
        cfg: The swarm settings.

    Raises:
        DivergenceError: if the power flow of the idle dispatch does not converge.
    """

    lower, upper = gene_bounds(ctx)
    idle = evaluate(lower, ctx)

    if not np.any(upper > lower):
        LOGGER.debug("State %i has nothing to dispatch", ctx.state)
        return idle

    result = swarm_kernel(
        lambda genes: _candidate_fitness(genes, ctx), lower, upper, cfg
    )
    best = evaluate(result.best, ctx)

    return best if best.fitness >= idle.fitness else idle


@dataclass(frozen=True)
class Schedule:
    """The optimised dispatch of the scheduling day."""

    individuals: tuple[Individual, ...]
    """The best individual of each state."""
    soc: SocTrace
    """The state of charge trace of the batteries."""
    plan: DmsPlan
    """The plan the schedule was built from."""

    @property
    def dispatches(self) -> tuple[Dispatch, ...]:
        """The dispatch of each state."""
        return tuple(ind.dispatch for ind in self.individuals)

    @property
    def ledgers(self) -> tuple[StateLedger, ...]:
        """The ledger of each state."""
        return tuple(ind.ledger for ind in self.individuals)

    @property
    def pf_results(self) -> tuple[PowerFlowResult, ...]:
        """The power flow of each state."""
        return tuple(ind.pf for ind in self.individuals)

    @property
    def n_violations(self) -> int:
        """The number of constraint violations left in the schedule."""
        return sum(len(ind.violations) for ind in self.individuals)

    def to_frame(self, fleet: DeviceFleet, labels: Sequence[str]) -> pd.DataFrame:
        """Return the schedule as a table, one row per state."""

        frame = pd.DataFrame(index=pd.Index(list(labels), name="state"))

        for col, bess in enumerate(fleet.batteries):
            frame[f"bess_{bess.node}_mode"] = [
                self.plan.mode(idx, col).value for idx in range(len(labels))
            ]
            frame[f"bess_{bess.node}_charge"] = [
                d.bess_charge[col] for d in self.dispatches
            ]
            frame[f"bess_{bess.node}_discharge"] = [
                d.bess_discharge[col] for d in self.dispatches
            ]
            frame[f"bess_{bess.node}_soc"] = self.soc.values[:, col]

        for col, mt in enumerate(fleet.microturbines):
            frame[f"mt_{mt.node}_output"] = [d.mt_output[col] for d in self.dispatches]

        frame["fitness"] = [ind.fitness for ind in self.individuals]
        frame["profit"] = [ind.ledger.of for ind in self.individuals]
        return frame


def optimize_day(
    case: CaseData,
    fleet: DeviceFleet,
    conditions: Sequence[StateConditions],
    plan: DmsPlan,
    cfg: SwarmConfig = SwarmConfig(),
    network: NetworkConsts = NetworkConsts(),
    consts: OptimizerConsts = OptimizerConsts(),
    reverse_constraint: bool = True,
    soc_tolerance: float = 1e-9,
    progress: bool = False,
) -> Schedule:
    """Optimise the states of a day in chronological order.

    Each state gets its own child seed spawned from the swarm seed, and starts from
    the state of charge left by the previous state.

    Args:
        case: The case.
        fleet: The device fleet.
        conditions: The conditions of each state.
        plan: The dispatch plan built from the same prices.
        cfg: The swarm settings.
        network: The network constants.
        consts: The penalty weights.
        reverse_constraint: Whether back-feed at the substation is penalised.
        soc_tolerance: The slack allowed on the state of charge band.
        progress: Whether to show a progress bar.

    Raises:
        ValueError: if the plan and the conditions cover different states.
        DivergenceError: if a state power flow does not converge, with the state set.
        ConsistencyError: if a state of charge leaves its band.
    """

    if plan.n_states != len(conditions):
        to_raise = ValueError(
            f"Plan has {plan.n_states} states but {len(conditions)} were given"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    fleet = fleet.with_fc_price(plan.fc_price)
    root = cfg.seed if isinstance(cfg.seed, SeedSequence) else SeedSequence(cfg.seed)
    seeds = root.spawn(len(conditions))

    soc = np.array([bess.soc_init for bess in fleet.batteries])
    initial = soc.copy()
    soc_rows: list[np.ndarray] = []
    individuals: list[Individual] = []

    for cond, seed in tqdm(
        zip(conditions, seeds),
        total=len(conditions),
        disable=not progress,
        desc="Scheduling states",
    ):
        ctx = StateContext(
            case=case,
            fleet=fleet,
            cond=cond,
            plan=plan,
            soc_prev=soc.copy(),
            network=network,
            consts=consts,
            reverse_constraint=reverse_constraint,
        )

        try:
            best = optimize_state(ctx, replace(cfg, seed=seed))
        except DivergenceError as excep:
            to_raise = DivergenceError(f"State {cond.state}: {excep}", state=cond.state)
            LOGGER.critical(to_raise)
            raise to_raise from excep

        soc = np.array(
            [
                soc_update(bess, soc[col], p_c, p_d, cond.dt, soc_tolerance)
                for col, (bess, p_c, p_d) in enumerate(
                    zip(
                        fleet.batteries,
                        best.dispatch.bess_charge,
                        best.dispatch.bess_discharge,
                    )
                )
            ]
        )
        soc_rows.append(soc)
        individuals.append(best)

        LOGGER.info(
            "State %i optimised: fitness %.2f $, profit %.2f $",
            cond.state,
            best.fitness,
            best.ledger.of,
        )

    trace = SocTrace(
        initial=initial,
        values=np.array(soc_rows).reshape(len(conditions), len(fleet.batteries)),
    )
    trace.check(fleet.batteries, soc_tolerance)

    return Schedule(individuals=tuple(individuals), soc=trace, plan=plan)
