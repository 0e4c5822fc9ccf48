"""A test constants class for the test module."""  # noqa: D205, D415

from dataclasses import dataclass
from typing import ClassVar

from feeder_scheduler.core.constants_class import ConstantsDataclass


@dataclass(frozen=True)
class TestConsts(ConstantsDataclass):
    """Test constants."""

    a_constant: float = 123.4
    fixed_constant: ClassVar[float] = 1.0
