"""The :mod:`~feeder_scheduler.main` module defines the functions used to run a full
scheduling day and to compare the outcome of two runs.

A run validates the configuration, loads the case, the price signal and the historical
profiles, synthesises the uncertain day, builds the battery dispatch plan, optimises
every system state in turn and finally writes the schedule and the day report to the
output folder.
"""  # noqa: D205, D415

import os
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
from xarray import DataArray

from feeder_scheduler import example_data_path
from feeder_scheduler.core.config import Config, config_merge
from feeder_scheduler.core.constants_loader import load_constants
from feeder_scheduler.core.core_components import CoreComponents
from feeder_scheduler.core.data import PROFILE_KINDS, DayProfiles, load_history_folder
from feeder_scheduler.core.exceptions import InputError
from feeder_scheduler.core.logger import LOGGER, add_file_logger, remove_file_logger
from feeder_scheduler.core.utils import check_outfile, input_digest
from feeder_scheduler.models.der_models.devices import build_fleet
from feeder_scheduler.models.dms.plan import build_plan, load_price_signal
from feeder_scheduler.models.economics.ledger import build_state_conditions
from feeder_scheduler.models.economics.report import (
    Comparison,
    DayReport,
    build_report,
    compare_reports,
)
from feeder_scheduler.models.network.case import load_case_file
from feeder_scheduler.models.optimizer.scheduler import Schedule, optimize_day
from feeder_scheduler.models.optimizer.swarm import SwarmConfig
from feeder_scheduler.models.uncertainty.envelope import (
    HistoricalSeries,
    synthesize_profiles,
)

RUN_MODULES: tuple[str, ...] = (
    "network",
    "der_models",
    "uncertainty",
    "dms",
    "economics",
    "optimizer",
)
"""The modules configured for every scheduling run."""

BUNDLED_DATA: dict[str, Path] = {
    "case": Path("data") / "case33.csv",
    "prices": Path("data") / "prices.csv",
    "profiles": Path("data") / "profiles",
}
"""The example data used for ``core.data`` entries left empty."""


def resolve_data_paths(config: Config) -> dict[str, Path]:
    """Find the input paths of a run.

    Empty ``core.data`` entries select the example data shipped with the package.

    Args:
        config: A validated configuration.
    """

    paths = {}
    for key, bundled in BUNDLED_DATA.items():
        value = config["core"]["data"][key]
        if value == "":
            paths[key] = Path(example_data_path) / bundled
            LOGGER.info("Using bundled %s data: %s", key, paths[key])
        else:
            paths[key] = Path(value)

    return paths


def _check_states(name: str, found: int, expected: int) -> None:
    """Check that an input covers the configured number of states."""

    if found != expected:
        to_raise = InputError(
            f"{name} data has {found} states, the configuration expects {expected}"
        )
        LOGGER.critical(to_raise)
        raise to_raise


def _write_outputs(
    out_path: Path,
    report: DayReport,
    schedule: Schedule,
    frame_args: tuple,
    profiles: DayProfiles,
    data_opt: dict[str, Any],
) -> None:
    """Write the schedule, the plot series and the day report of a run."""

    schedule.to_frame(*frame_args).to_csv(out_path / "schedule.csv")
    report.series_frame().to_csv(out_path / "series.csv")
    (out_path / "report.json").write_text(report.to_json())
    (out_path / "report.txt").write_text(report.to_text())

    if data_opt["save_netcdf"]:
        series = report.series_frame()
        profiles.save_to_netcdf(
            out_path / data_opt["out_netcdf_file_name"],
            extra={
                f"series_{name}": DataArray(series[name].to_numpy(), dims=("state",))
                for name in series.columns
            },
        )

    LOGGER.info("Schedule and report written to: %s", out_path)


def fs_run(
    cfg_paths: str | Path | Sequence[str | Path] = [],
    cfg_strings: str | list[str] = [],
    override_params: dict[str, Any] = {},
    logfile: Path | None = None,
    progress: bool = False,
) -> DayReport:
    """Schedule the batteries and microturbines of a feeder for one day.

    Without configuration paths or strings the run uses the default settings and the
    bundled example data.

    Args:
        cfg_paths: Set of paths to configuration files
        cfg_strings: An alternate string providing TOML formatted configuration data
        override_params: Extra parameters provided by the user
        logfile: An optional path to a log file, otherwise logging will print to the
            console.
        progress: A logical switch to turn on simple progress reporting, mostly for
            visual confirmation of progress when the log is not printed to the console.

    Returns:
        The report of the scheduled day.
    """

    if progress:
        print("Starting feeder scheduling run.")

    if logfile is not None:
        add_file_logger(logfile)
        if progress:
            print(f"* Logging to: {logfile}")

    try:
        return _run(cfg_paths, cfg_strings, override_params, progress)
    finally:
        remove_file_logger()


def _run(
    cfg_paths: str | Path | Sequence[str | Path],
    cfg_strings: str | list[str],
    override_params: dict[str, Any],
    progress: bool,
) -> DayReport:
    """Carry out the steps of a scheduling run."""

    if progress:
        print("* Loading configuration")

    if not (cfg_paths or cfg_strings):
        cfg_strings = [""]

    # Every run module has to be present for its schema and defaults to be applied
    override_params, _ = config_merge(
        {module: {} for module in RUN_MODULES}, override_params
    )
    config = Config(
        cfg_paths=cfg_paths, cfg_strings=cfg_strings, override_params=override_params
    )

    data_opt = config["core"]["data_output_options"]
    out_path = Path(data_opt["out_path"])
    os.makedirs(out_path, exist_ok=True)

    if data_opt["save_merged_config"]:
        outfile = out_path / data_opt["out_merge_file_name"]
        check_outfile(outfile)
        config.export_config(outfile)
        if progress:
            print(f"* Saved compiled configuration: {outfile}")

    core_components = CoreComponents(config)
    timing = core_components.state_timing
    network_consts = load_constants(config, "network", "NetworkConsts")
    der_consts = load_constants(config, "der_models", "DerConsts")
    uncertainty_consts = load_constants(config, "uncertainty", "UncertaintyConsts")
    dms_consts = load_constants(config, "dms", "DmsConsts")
    economics_consts = load_constants(config, "economics", "EconomicsConsts")
    optimizer_consts = load_constants(config, "optimizer", "OptimizerConsts")

    if progress:
        print("* Loading input data")

    paths = resolve_data_paths(config)
    case = load_case_file(paths["case"], network_consts.default_ampacity)
    fleet = build_fleet(case, der_consts)
    prices = load_price_signal(
        paths["prices"], dms_consts.customer_markup, timing.n_states
    )

    month = config["uncertainty"]["month"]
    histories = {}
    for kind, darray in load_history_folder(paths["profiles"]).items():
        histories[kind] = HistoricalSeries.from_dataarray(darray, month=month)
        _check_states(kind, histories[kind].n_states, timing.n_states)

    if progress:
        print("* Synthesising the uncertain day")

    k = config["uncertainty"]["k"]
    synthetic = synthesize_profiles(
        histories,
        k=k,
        seed=core_components.seed,
        max_passes=uncertainty_consts.projection_passes,
        tolerance=uncertainty_consts.mean_tolerance,
    )

    profiles = DayProfiles(timing.labels)
    for kind in PROFILE_KINDS:
        profiles[kind] = synthetic[kind]
    profiles["grid_price"] = prices.grid_price
    profiles["customer_price"] = prices.customer_price

    strategy = config["dms"]["strategy"]
    plan = build_plan(
        fleet,
        prices,
        strategy=strategy,
        dt=timing.dt,
        fictitious_charges=config["dms"]["fictitious_charges"],
        clamp_remainder=dms_consts.clamp_remainder,
    )

    if progress:
        print("* Optimising system states")

    schedule = optimize_day(
        case,
        fleet,
        build_state_conditions(profiles, timing.dt),
        plan,
        cfg=SwarmConfig.from_constants(
            optimizer_consts,
            seed=core_components.seed,
            scheduler=config["optimizer"]["scheduler"],
        ),
        network=network_consts,
        consts=optimizer_consts,
        reverse_constraint=config["optimizer"]["reverse_constraint"],
        soc_tolerance=core_components.core_constants.soc_tolerance,
        progress=progress,
    )

    digest = input_digest(
        paths.values(),
        extra=[
            np.ascontiguousarray(synthetic[kind]).tobytes() for kind in PROFILE_KINDS
        ]
        + [f"{timing.n_states}x{timing.dt}".encode()],
    )

    report = build_report(
        schedule.ledgers,
        schedule.dispatches,
        schedule.pf_results,
        schedule.soc,
        fleet,
        timing.labels,
        dt=timing.dt,
        strategy=strategy,
        seed=core_components.seed,
        peak_states=plan.discharge_states,
        digest=digest,
        violations=schedule.n_violations,
        consts=economics_consts,
    )

    _write_outputs(
        out_path, report, schedule, (fleet, timing.labels), profiles, data_opt
    )

    LOGGER.info("Daily profit: %.2f $", report.dpf)
    if progress:
        print(f"* Daily profit: {report.dpf:.2f} $")
        print("Feeder scheduling run complete.")

    return report


def fs_compare(
    cfg_paths_a: str | Path | Sequence[str | Path],
    cfg_paths_b: str | Path | Sequence[str | Path],
    override_params: dict[str, Any] = {},
    logfile: Path | None = None,
    progress: bool = False,
) -> Comparison:
    """Run two configurations on the same inputs and compare their reports.

    The runs write to ``run_a`` and ``run_b`` below the configured output path, and the
    comparison tables are written to the output path itself.

    Args:
        cfg_paths_a: The configuration paths of the first run.
        cfg_paths_b: The configuration paths of the second run.
        override_params: Extra parameters applied to both runs.
        logfile: An optional path to a log file shared by both runs.
        progress: A logical switch to turn on simple progress reporting.

    Raises:
        ComparisonError: if the runs used different inputs.
    """

    out_root = Path(
        override_params.get("core", {})
        .get("data_output_options", {})
        .get("out_path", ".")
    )

    reports = []
    for run_name, cfg_paths in (("run_a", cfg_paths_a), ("run_b", cfg_paths_b)):
        run_params, _ = config_merge(
            override_params,
            {"core": {"data_output_options": {"out_path": str(out_root / run_name)}}},
        )
        if logfile is not None:
            add_file_logger(logfile)
        try:
            reports.append(_run(cfg_paths, [], run_params, progress))
        finally:
            remove_file_logger()

    comparison = compare_reports(*reports)

    os.makedirs(out_root, exist_ok=True)
    (out_root / "comparison.txt").write_text(comparison.to_text())
    (out_root / "comparison.json").write_text(comparison.to_json())
    LOGGER.info("Comparison written to: %s", out_root)

    return comparison
