"""Test module for main.py (and associated functionality).

This module tests both the scheduling run function `fs_run`, the comparison function
`fs_compare` and the other functions defined in main.py that they call.
"""

from logging import CRITICAL, INFO

import pandas as pd
import pytest

from feeder_scheduler.core.exceptions import ComparisonError, InputError
from tests.conftest import record_found_in_log

FAST_SWARM = """
[optimizer.constants.OptimizerConsts]
population = 2
generations = 1
"""
"""Swarm settings that keep a full run quick."""


def _out(tmp_path, name="out"):
    """A configuration string writing to a folder below tmp_path."""
    return f'[core.data_output_options]\nout_path = "{(tmp_path / name).as_posix()}"\n'


def test_resolve_data_paths(caplog, bundled_data):
    """Check that empty data entries select the bundled data."""
    from feeder_scheduler.core.config import Config
    from feeder_scheduler.main import resolve_data_paths

    config = Config(cfg_strings='[core.data]\nprices = "my_prices.csv"\n')
    caplog.clear()

    paths = resolve_data_paths(config)

    assert paths["case"] == bundled_data / "case33.csv"
    assert paths["profiles"] == bundled_data / "profiles"
    assert str(paths["prices"]) == "my_prices.csv"
    assert record_found_in_log(
        caplog, (INFO, f"Using bundled case data: {bundled_data / 'case33.csv'}")
    )


def test_fs_run(caplog, tmp_path):
    """Check a complete run on the bundled data."""
    from feeder_scheduler.main import fs_run

    report = fs_run(cfg_strings=[_out(tmp_path), FAST_SWARM])
    out = tmp_path / "out"

    assert report.strategy == "mpas"
    assert report.n_states == 24
    assert report.seed == 7
    assert len(report.digest) == 64

    for name in (
        "fs_effective_config.toml",
        "schedule.csv",
        "series.csv",
        "report.json",
        "report.txt",
    ):
        assert (out / name).exists()

    schedule = pd.read_csv(out / "schedule.csv", index_col="state")
    assert len(schedule) == 24
    assert schedule.index[0] == "00:00"
    assert {"bess_17_soc", "bess_25_mode", "mt_25_output"} <= set(schedule.columns)
    assert len(pd.read_csv(out / "series.csv")) == 24

    assert record_found_in_log(caplog, (INFO, f"Daily profit: {report.dpf:.2f} $"))


def test_fs_run_reproducible(tmp_path):
    """Check that two runs with the same seed give the same report."""
    from feeder_scheduler.main import fs_run

    first = fs_run(cfg_strings=[_out(tmp_path, "a"), FAST_SWARM])
    again = fs_run(cfg_strings=[_out(tmp_path, "b"), FAST_SWARM])

    assert first.digest == again.digest
    assert first.dpf == again.dpf
    assert (tmp_path / "a" / "report.txt").read_text() == (
        tmp_path / "b" / "report.txt"
    ).read_text()


def test_fs_run_netcdf(tmp_path):
    """Check that the day profiles and series can be saved to NetCDF."""
    from xarray import open_dataset

    from feeder_scheduler.main import fs_run

    fs_run(
        cfg_strings=[_out(tmp_path), FAST_SWARM],
        override_params={"core": {"data_output_options": {"save_netcdf": True}}},
    )

    with open_dataset(tmp_path / "out" / "schedule.nc") as dataset:
        assert dataset.sizes["state"] == 24
        assert {"spv", "wt", "load", "grid_price", "series_net_load"} <= set(dataset)


@pytest.mark.parametrize(
    "cfg_string,message",
    [
        pytest.param(
            '[core.data]\nprices = "no_such_prices.csv"\n',
            "price file not found: no_such_prices.csv",
            id="missing_prices",
        ),
        pytest.param(
            "[core.timing]\nn_states = 12\n",
            "has 24 states, expected 12",
            id="state_count",
        ),
    ],
)
def test_fs_run_input_errors(caplog, tmp_path, cfg_string, message):
    """Check that input problems stop a run."""
    from feeder_scheduler.main import fs_run

    with pytest.raises(InputError, match=message):
        fs_run(cfg_strings=[_out(tmp_path), cfg_string])

    assert caplog.records[-1].levelno == CRITICAL


def test_fs_run_logfile(tmp_path):
    """Check that a run can log to a file and restores stream logging after."""
    from feeder_scheduler.core.logger import LOGGER
    from feeder_scheduler.main import fs_run

    logfile = tmp_path / "run.log"
    fs_run(cfg_strings=[_out(tmp_path), FAST_SWARM], logfile=logfile)

    assert "Daily profit" in logfile.read_text().splitlines()[-1]
    assert LOGGER.propagate


def test_fs_compare(caplog, tmp_path):
    """Check the comparison of the two bundled strategies."""
    from feeder_scheduler.main import fs_compare

    fast = tmp_path / "fast.toml"
    fast.write_text(FAST_SWARM)
    fixed = tmp_path / "fixed.toml"
    fixed.write_text(FAST_SWARM + '[dms]\nstrategy = "fixed-window"\n')

    comparison = fs_compare(
        [fast],
        [fixed],
        override_params={"core": {"data_output_options": {"out_path": str(tmp_path)}}},
    )

    assert comparison.strategy_a == "mpas"
    assert comparison.strategy_b == "fixed-window"
    for name in ("run_a/report.json", "run_b/report.json", "comparison.txt"):
        assert (tmp_path / name).exists()
    assert "daily_profit" in (tmp_path / "comparison.txt").read_text()
    assert record_found_in_log(caplog, (INFO, f"Comparison written to: {tmp_path}"))


def test_fs_compare_different_inputs(tmp_path):
    """Check that runs on different seeds cannot be compared."""
    from feeder_scheduler.main import fs_compare

    first = tmp_path / "first.toml"
    first.write_text(FAST_SWARM)
    second = tmp_path / "second.toml"
    second.write_text(FAST_SWARM + "[core]\nseed = 8\n")

    with pytest.raises(ComparisonError):
        fs_compare(
            [first],
            [second],
            override_params={
                "core": {"data_output_options": {"out_path": str(tmp_path)}}
            },
        )


def test_fs_run_effective_config_round_trip(tmp_path):
    """Check that rerunning the exported configuration reproduces the run."""
    from feeder_scheduler.main import fs_run

    fs_run(cfg_strings=[_out(tmp_path, "first"), FAST_SWARM])
    fs_run(
        cfg_paths=[tmp_path / "first" / "fs_effective_config.toml"],
        override_params={
            "core": {"data_output_options": {"out_path": str(tmp_path / "second")}}
        },
    )

    for name in ("report.json", "report.txt", "series.csv"):
        assert (tmp_path / "second" / name).read_text() == (
            tmp_path / "first" / name
        ).read_text()


def test_fs_compare_mpas_beats_fixed_window(tmp_path):
    """Check that price ranked limits earn at least the fixed window baseline."""
    from feeder_scheduler.main import fs_compare

    mpas = tmp_path / "mpas.toml"
    mpas.write_text('[core]\nseed = 7\n[dms]\nstrategy = "mpas"\n')
    fixed = tmp_path / "fixed.toml"
    fixed.write_text('[core]\nseed = 7\n[dms]\nstrategy = "fixed-window"\n')

    comparison = fs_compare(
        [mpas],
        [fixed],
        override_params={"core": {"data_output_options": {"out_path": str(tmp_path)}}},
    )
    profit = comparison.row("daily_profit")

    assert comparison.strategy_a == "mpas"
    assert profit.a >= profit.b
