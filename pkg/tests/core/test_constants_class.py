"""Tests of the constants dataclass base class."""

from contextlib import nullcontext as does_not_raise
from logging import ERROR, INFO

import pytest

from tests.conftest import log_check


@pytest.mark.parametrize(
    "config,raises,exp_log",
    [
        pytest.param({}, does_not_raise(), (), id="defaults"),
        pytest.param({"a_constant": 1.5}, does_not_raise(), (), id="configured"),
        pytest.param(
            {"fixed_constant": 2.0},
            pytest.raises(Exception),
            (
                (ERROR, "Constant in TestConsts not configurable: fixed_constant"),
                (INFO, "Valid names are: a_constant"),
            ),
            id="class_variable",
        ),
        pytest.param(
            {"b_constant": 2.0},
            pytest.raises(Exception),
            (
                (ERROR, "Unknown names supplied for TestConsts: b_constant"),
                (INFO, "Valid names are: a_constant"),
            ),
            id="unknown_name",
        ),
    ],
)
def test_ConstantsDataclass_from_config(caplog, config, raises, exp_log):
    """Test building a constants instance from a configuration dictionary."""
    from feeder_scheduler.core.exceptions import ConfigurationError
    from tests.core.test_modules.one_module.constants import TestConsts

    with raises as excep:
        consts = TestConsts.from_config(config)
        assert consts.a_constant == config.get("a_constant", 123.4)
        assert consts.fixed_constant == 1.0

    if excep is not None:
        assert excep.type is ConfigurationError

    log_check(caplog, exp_log)


def test_ConstantsDataclass_frozen():
    """Test that constants cannot be changed after creation."""
    from dataclasses import FrozenInstanceError

    from feeder_scheduler.models.der_models.constants import DerConsts

    consts = DerConsts()
    with pytest.raises(FrozenInstanceError):
        consts.soc_min = 0.2  # type: ignore[misc]
