"""The :mod:`~feeder_scheduler.core.constants_class` module provides the abstract base
class :class:`~feeder_scheduler.core.constants_class.ConstantsDataclass`, shared by all
module constants such as the Table of device defaults in
:mod:`feeder_scheduler.models.der_models.constants`.

To add constants to a module:

1. Create a ``constants.py`` submodule in the module package.
2. Define a frozen dataclass inheriting from ``ConstantsDataclass``.
3. Declare user tunable values as instance fields and fixed values as ``ClassVar``.

The :meth:`~feeder_scheduler.core.constants_class.ConstantsDataclass.from_config`
method then builds instances from the ``[<module>.constants.<ClassName>]`` section of a
configuration.
"""  # noqa: D205, D415

from __future__ import annotations

from abc import ABC
from dataclasses import dataclass, fields
from typing import Any, ClassVar, get_type_hints

from feeder_scheduler.core.exceptions import ConfigurationError
from feeder_scheduler.core.logger import LOGGER


@dataclass(frozen=True)
class ConstantsDataclass(ABC):
    """The constants dataclass abstract base class.

    Fields declared as instance variables can be set from a configuration, while class
    variables are fixed:

    .. code-block:: python

        @dataclass(frozen=True)
        class ExampleConsts(ConstantsDataclass):

            cannot_be_changed: ClassVar[float] = 1.0
            can_be_configured: float = 2.0
    """

    @classmethod
    def from_config(cls, config: dict[str, Any]) -> ConstantsDataclass:
        """Create a constants instance from a configuration dictionary.

        Args:
            config: A mapping of constant names to values, overriding the defaults.

        Raises:
            ConfigurationError: The mapping contains names that are not fields of the
                class or tries to set a class variable.
        """

        provided_names = set(config)
        valid_names = {fld.name for fld in fields(cls)}
        classvar_names = {
            name
            for name, hint in get_type_hints(cls, include_extras=True).items()
            if getattr(hint, "__origin__", None) is ClassVar or hint is ClassVar
        }

        unexpected_names = provided_names - valid_names
        unconfigurable_names = unexpected_names & classvar_names

        if unconfigurable_names:
            msg = (
                f"Constant in {cls.__name__} "
                f'not configurable: {", ".join(sorted(unconfigurable_names))}'
            )
            LOGGER.error(msg)
            LOGGER.info("Valid names are: %s" % ", ".join(sorted(valid_names)))
            raise ConfigurationError(msg)

        if unexpected_names:
            msg = (
                "Unknown names supplied "
                f'for {cls.__name__}: {", ".join(sorted(unexpected_names))}'
            )
            LOGGER.error(msg)
            LOGGER.info("Valid names are: %s" % ", ".join(sorted(valid_names)))
            raise ConfigurationError(msg)

        return cls(**config)
