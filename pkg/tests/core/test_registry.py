"""Test the registry functionality."""

from contextlib import nullcontext as does_not_raise
from logging import CRITICAL, ERROR, INFO

import pytest

from tests.conftest import log_check


@pytest.mark.parametrize(
    argnames="module_name, raises, exp_log",
    argvalues=[
        pytest.param(
            "feeder_scheduler.core",
            does_not_raise(),
            (
                (INFO, "Registering module: feeder_scheduler.core"),
                (INFO, "Schema registered for feeder_scheduler.core:"),
                (
                    INFO,
                    "Constants class registered for feeder_scheduler.core: CoreConsts",
                ),
            ),
            id="core_import_good",
        ),
        pytest.param(
            "tests.core.test_modules.one_module",
            does_not_raise(),
            (
                (INFO, "Registering module: tests.core.test_modules.one_module"),
                (INFO, "Schema registered for tests.core.test_modules.one_module:"),
                (
                    INFO,
                    "Constants class registered for "
                    "tests.core.test_modules.one_module: TestConsts",
                ),
            ),
            id="module_import_good",
        ),
        pytest.param(
            "tests.core.test_modules.nothing_here",
            pytest.raises(ModuleNotFoundError),
            (
                (
                    CRITICAL,
                    "Unknown module - registration failed: "
                    "tests.core.test_modules.nothing_here",
                ),
            ),
            id="module_import_bad_module",
        ),
        pytest.param(
            "tests.core.test_modules.no_schema",
            pytest.raises(FileNotFoundError),
            (
                (INFO, "Registering module: tests.core.test_modules.no_schema"),
                (ERROR, "Schema file not found"),
                (CRITICAL, "Schema registration for no_schema failed: check log"),
            ),
            id="module_no_schema",
        ),
        pytest.param(
            "tests.core.test_modules.bad_schema",
            pytest.raises(ValueError),
            (
                (INFO, "Registering module: tests.core.test_modules.bad_schema"),
                (ERROR, "Missing key in module schema bad_schema"),
                (CRITICAL, "Schema registration for bad_schema failed: check log"),
            ),
            id="module_bad_schema",
        ),
    ],
)
def test_register_module(caplog, module_name, raises, exp_log):
    """Test the registry loading."""

    from feeder_scheduler.core.constants_class import ConstantsDataclass
    from feeder_scheduler.core.registry import (
        MODULE_REGISTRY,
        ModuleInfo,
        register_module,
    )

    _, _, short_name = module_name.rpartition(".")

    caplog.clear()

    with raises:
        register_module(module_name=module_name)

        assert short_name in MODULE_REGISTRY
        info = MODULE_REGISTRY[short_name]
        assert isinstance(info, ModuleInfo)
        assert info.is_core == (short_name == "core")
        assert short_name in info.schema["properties"]
        assert all(
            issubclass(cls, ConstantsDataclass)
            for cls in info.constants_classes.values()
        )

    log_check(caplog, exp_log)


def test_register_module_twice(caplog):
    """Test that registering a module twice only warns."""
    from logging import WARNING

    from feeder_scheduler.core.registry import register_module

    register_module("feeder_scheduler.models.dms")
    caplog.clear()
    register_module("feeder_scheduler.models.dms")

    log_check(
        caplog, ((WARNING, "Module already registered: feeder_scheduler.models.dms"),)
    )


@pytest.mark.parametrize(
    "module,constants",
    [
        pytest.param("network", {"NetworkConsts"}, id="network"),
        pytest.param("der_models", {"DerConsts"}, id="der_models"),
        pytest.param("uncertainty", {"UncertaintyConsts"}, id="uncertainty"),
        pytest.param("dms", {"DmsConsts"}, id="dms"),
        pytest.param("economics", {"EconomicsConsts"}, id="economics"),
        pytest.param("optimizer", {"OptimizerConsts"}, id="optimizer"),
    ],
)
def test_register_scheduler_modules(module, constants):
    """Test that each scheduler module registers its constants class."""
    from feeder_scheduler.core.registry import MODULE_REGISTRY, register_module

    register_module(f"feeder_scheduler.models.{module}")

    assert set(MODULE_REGISTRY[module].constants_classes) == constants
    assert not MODULE_REGISTRY[module].is_core
