"""Tests of the constants loader."""

from logging import CRITICAL, INFO

import pytest

from tests.conftest import log_check, record_found_in_log


@pytest.mark.parametrize(
    "cfg_string,expected",
    [
        pytest.param("[network]\n", 0.95, id="default"),
        pytest.param(
            "[network.constants.NetworkConsts]\nv_min = 0.9\n", 0.9, id="configured"
        ),
    ],
)
def test_load_constants(caplog, cfg_string, expected):
    """Test that constants are loaded from a validated configuration."""
    from feeder_scheduler.core.config import Config
    from feeder_scheduler.core.constants_loader import load_constants

    config = Config(cfg_strings=cfg_string)
    caplog.clear()

    consts = load_constants(config, "network", "NetworkConsts")

    assert consts.v_min == expected
    assert consts.v_max == 1.05
    log_check(caplog, ((INFO, "Initialised network.NetworkConsts from config"),))


@pytest.mark.parametrize(
    "module,class_name,message",
    [
        pytest.param(
            "missing", "MissingConsts", "Unknown or unregistered module", id="module"
        ),
        pytest.param("network", "MissingConsts", "Unknown constants class", id="class"),
        pytest.param(
            "dms",
            "DmsConsts",
            "Configuration does not include module: dms",
            id="not_configured",
        ),
    ],
)
def test_load_constants_bad_names(caplog, module, class_name, message):
    """Test that unknown modules and classes raise."""
    from feeder_scheduler.core.config import Config
    from feeder_scheduler.core.constants_loader import load_constants
    from feeder_scheduler.core.registry import register_module

    config = Config(cfg_strings="[network]\n")
    register_module("feeder_scheduler.models.dms")
    caplog.clear()

    with pytest.raises(KeyError, match=message):
        load_constants(config, module, class_name)

    log_check(caplog, ((CRITICAL, message),))


def test_load_constants_bad_value(caplog):
    """Test that an unknown constant in the configuration raises."""
    from feeder_scheduler.core.config import Config
    from feeder_scheduler.core.constants_loader import load_constants
    from feeder_scheduler.core.exceptions import ConfigurationError

    config = Config(cfg_strings="[dms.constants.DmsConsts]\nmarkup = 1.1\n")

    with pytest.raises(ConfigurationError):
        load_constants(config, "dms", "DmsConsts")

    assert record_found_in_log(
        caplog, (CRITICAL, "Could not initialise dms.DmsConsts from config")
    )
