"""Collection of fixtures to assist the testing scripts."""

from logging import DEBUG
from pathlib import Path

import numpy as np
import pytest

# An import of LOGGER is required for INFO logging events to be visible to tests
# This can be removed as soon as a script that imports logger is imported
from feeder_scheduler.core.logger import LOGGER

# Class uses DEBUG
LOGGER.setLevel(DEBUG)

SMALL_CASE = """
# Four bus feeder with a lateral
[bus]
id,p_kw,q_kvar
1,0,0
2,100,60
3,200,100
4,150,80
[line]
from,to,r_ohm,x_ohm,amp
1,2,0.0922,0.0470,400
2,3,0.4930,0.2511,400
2,4,0.3660,0.1864,400
[der]
node,type,rating
3,SPV,200
4,WT,200
4,MT,300
3,BESS,600
"""
"""A small case used across the tests."""


def log_check(
    caplog: pytest.LogCaptureFixture,
    expected_log: tuple[tuple],
    subset: slice | None = None,
) -> None:
    """Helper function to check that the captured log is as expected.

    Arguments:
        caplog: An instance of the caplog fixture
        expected_log: An iterable of 2-tuples containing the log level and message.
        subset: Only check a specified subset of the captured log.
    """

    # caplog.records is just a list of LogRecord objects, so can use a slice to drop
    # down to a subset of the records.
    if subset is None:
        captured_records = caplog.records
    else:
        captured_records = caplog.records[subset]

    assert len(expected_log) == len(captured_records)

    assert all(
        [exp[0] == rec.levelno for exp, rec in zip(expected_log, captured_records)]
    )
    assert all(
        [exp[1] in rec.message for exp, rec in zip(expected_log, captured_records)]
    )


def record_found_in_log(
    caplog: pytest.LogCaptureFixture,
    find: tuple[int, str],
) -> bool:
    """Helper function to look for a specific logging record in the captured log.

    Arguments:
        caplog: An instance of the caplog fixture
        find: A tuple giving the logging level and message to look for
    """

    try:
        # Iterate over the record tuples, ignoring the leading element
        # giving the logger name
        _ = next(msg for msg in caplog.record_tuples if msg[1:] == find)
        return True
    except StopIteration:
        return False


@pytest.fixture(autouse=True)
def reset_module_registry():
    """Reset the module registry.

    The register_module function updates the MODULE_REGISTRY, which persists between
    tests. This autouse fixture is used to ensure that the registry is always cleared
    before tests start, so that the correct registration of modules within tests is
    enforced.
    """
    from feeder_scheduler.core.registry import MODULE_REGISTRY

    MODULE_REGISTRY.clear()


# Shared fixtures


@pytest.fixture
def bundled_data() -> Path:
    """The folder of bundled example input data."""

    from feeder_scheduler import example_data_path

    return Path(example_data_path) / "data"


@pytest.fixture
def fixture_small_case():
    """A four bus case with one unit of each DER type."""

    from feeder_scheduler.models.network.case import load_case

    return load_case(SMALL_CASE)


@pytest.fixture
def fixture_case33(bundled_data):
    """The bundled 33-bus case with its DER placements."""

    from feeder_scheduler.models.network.case import load_case_file

    return load_case_file(bundled_data / "case33.csv")


@pytest.fixture
def fixture_fleet(fixture_case33):
    """The device fleet of the bundled case with default parameters."""

    from feeder_scheduler.models.der_models.devices import build_fleet

    return build_fleet(fixture_case33)


@pytest.fixture
def fixture_small_fleet(fixture_small_case):
    """The device fleet of the small case with default parameters."""

    from feeder_scheduler.models.der_models.devices import build_fleet

    return build_fleet(fixture_small_case)


@pytest.fixture
def fixture_prices(bundled_data):
    """The bundled day-ahead price signal."""

    from feeder_scheduler.models.dms.plan import load_price_signal

    return load_price_signal(bundled_data / "prices.csv")


@pytest.fixture
def fixture_peaked_prices():
    """A single peaked price day with cheap nights and an evening peak."""

    from feeder_scheduler.models.dms.plan import PriceSignal

    hours = np.arange(24)
    grid = 0.05 + 0.03 * np.exp(-(((hours - 18) / 3.0) ** 2))
    return PriceSignal.from_grid(grid)


@pytest.fixture
def fixture_conditions():
    """Per-state conditions of a flat day at nominal load."""

    from feeder_scheduler.models.economics.ledger import StateConditions

    def _conditions(prices, load=0.7, spv=0.3, wt=0.4):
        return [
            StateConditions(
                state=idx,
                load=load,
                spv=spv,
                wt=wt,
                grid_price=float(prices.grid_price[idx]),
                customer_price=float(prices.customer_price[idx]),
            )
            for idx in range(prices.n_states)
        ]

    return _conditions
