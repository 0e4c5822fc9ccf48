"""The ``core.exceptions`` module stores the custom exceptions raised across the
scheduler. The command line interface maps them onto process exit codes: input and
configuration problems exit with 1, power flow divergence with 2 and accounting closure
failures with 3.
"""  # noqa: D205, D415


class ConfigurationError(Exception):
    """Custom exception class for configuration failures."""


class InputError(Exception):
    """Custom exception class for missing or malformed input data."""


class TopologyError(InputError):
    """Raised when a case does not describe a tree rooted at the substation."""


class CaseReferenceError(InputError):
    """Raised when a case element refers to a node that does not exist."""


class EnvelopeError(InputError):
    """Raised for empty historical series or an infeasible uncertainty envelope."""


class ComparisonError(InputError):
    """Raised when two runs that do not share their inputs are compared."""


class DivergenceError(Exception):
    """Raised when the power flow sweep fails to converge.

    Args:
        message: The error message.
        state: The index of the system state being solved, if known.
    """

    def __init__(self, message: str, state: int | None = None) -> None:
        super().__init__(message)
        self.state = state


class EvaluationError(Exception):
    """Raised when a state is evaluated on an unconverged power flow."""


class ConsistencyError(Exception):
    """Raised when a state of charge leaves its feasible band after clamping."""


class AccountingError(Exception):
    """Raised when the day report fails its energy or currency closure checks."""
