"""The :mod:`~feeder_scheduler.core.registry` module populates the
:data:`~feeder_scheduler.core.registry.MODULE_REGISTRY`, which gives access to the
configuration schema and the constants classes of each scheduler module. Entries are
:class:`~feeder_scheduler.core.registry.ModuleInfo` instances keyed by the short module
name (``core``, ``network``, ``dms`` and so on).

Modules are added with :func:`~feeder_scheduler.core.registry.register_module`, which
is called by :meth:`~feeder_scheduler.core.config.Config.build_schema` for each
top-level section of a configuration.
"""  # noqa: D205, D415

from dataclasses import dataclass, is_dataclass
from importlib import import_module, resources
from inspect import getmembers, isclass
from typing import Any

from feeder_scheduler.core.constants_class import ConstantsDataclass
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.core.schema import load_schema

MODEL_PACKAGE = "feeder_scheduler.models"
"""The package holding the configurable scheduler modules."""


@dataclass
class ModuleInfo:
    """Registration details for a scheduler module."""

    schema: dict[str, Any]
    """The module JSON schema, used to validate the module config section."""
    constants_classes: dict[str, Any]
    """The module constants dataclasses keyed by class name."""
    is_core: bool
    """Whether the entry describes the core module."""


MODULE_REGISTRY: dict[str, ModuleInfo] = {}
"""The global module registry, keyed by short module name."""


def register_module(module_name: str) -> None:
    """Register the schema and constants classes of a module.

    Args:
        module_name: The full name of the module to register (e.g.
            ``feeder_scheduler.models.network``).

    Raises:
        ModuleNotFoundError: The module cannot be imported.
        Exception: Loading the module schema failed.
    """

    _, _, short_name = module_name.rpartition(".")

    if short_name in MODULE_REGISTRY:
        LOGGER.warning(f"Module already registered: {module_name}")
        return

    try:
        module = import_module(module_name)
    except ModuleNotFoundError:
        LOGGER.critical(f"Unknown module - registration failed: {module_name}")
        raise

    LOGGER.info(f"Registering module: {module_name}")

    with resources.as_file(
        resources.files(module) / "module_schema.json"
    ) as schema_file_path:
        try:
            schema = load_schema(
                module_name=short_name, schema_file_path=schema_file_path
            )
        except Exception:
            LOGGER.critical(f"Schema registration for {short_name} failed: check log")
            raise

    LOGGER.info("Schema registered for %s: %s ", module_name, schema_file_path)

    try:
        constants_submodule = import_module(f"{module_name}.constants")
    except ModuleNotFoundError:
        constants_classes: dict[str, Any] = {}
    else:
        constants_classes = {
            class_name: class_obj
            for class_name, class_obj in getmembers(constants_submodule)
            if isclass(class_obj)
            and is_dataclass(class_obj)
            and issubclass(class_obj, ConstantsDataclass)
            and class_obj is not ConstantsDataclass
        }
        for class_name in constants_classes:
            LOGGER.info(
                "Constants class registered for %s: %s ", module_name, class_name
            )

    MODULE_REGISTRY[short_name] = ModuleInfo(
        schema=schema,
        constants_classes=constants_classes,
        is_core=module_name == "feeder_scheduler.core",
    )
