"""The :mod:`~feeder_scheduler.core.constants_loader` module provides
:func:`~feeder_scheduler.core.constants_loader.load_constants`, which looks up a
constants dataclass in the :data:`~feeder_scheduler.core.registry.MODULE_REGISTRY` and
populates it from a validated :class:`~feeder_scheduler.core.config.Config`.
"""  # noqa: D205, D415

from typing import Any

from feeder_scheduler.core.config import Config
from feeder_scheduler.core.exceptions import ConfigurationError
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.core.registry import MODULE_REGISTRY


def load_constants(config: Config, module_name: str, class_name: str) -> Any:
    """Load the specified constants class.

    Values configured under ``[<module_name>.constants.<class_name>]`` replace the
    defaults, all other constants keep their default values.

    Args:
        config: A validated scheduler configuration.
        module_name: The short name of the module owning the constants.
        class_name: The name of the constants dataclass.

    Returns:
        A populated constants instance.

    Raises:
        KeyError: The module or class is not registered, or the configuration does not
            include the module.
        ConfigurationError: The configured values do not match the class.
    """

    if module_name not in MODULE_REGISTRY:
        msg = f"Unknown or unregistered module in: {module_name}.{class_name}"
        LOGGER.critical(msg)
        raise KeyError(msg)

    if class_name not in MODULE_REGISTRY[module_name].constants_classes:
        msg = f"Unknown constants class: {module_name}.{class_name}"
        LOGGER.critical(msg)
        raise KeyError(msg)

    if module_name not in config:
        msg = f"Configuration does not include module: {module_name}"
        LOGGER.critical(msg)
        raise KeyError(msg)

    constants_class = MODULE_REGISTRY[module_name].constants_classes[class_name]
    constants_config = config[module_name].get("constants", {}).get(class_name, {})

    try:
        instance = constants_class.from_config(constants_config)
    except ConfigurationError:
        LOGGER.critical(f"Could not initialise {module_name}.{class_name} from config")
        raise
    except (TypeError, ValueError) as excep:
        to_raise = ConfigurationError(
            f"Invalid value in {module_name}.{class_name}: {excep}"
        )
        LOGGER.critical(to_raise)
        raise to_raise from excep

    LOGGER.info(f"Initialised {module_name}.{class_name} from config")
    return instance
