"""The :mod:`~feeder_scheduler.core.logger` module sets up the package logger used by
every other module of the scheduler.

Messages are emitted at the five standard logging levels, used as follows:

=============  =========================================================================
Logging level  Use case
=============  =========================================================================
``CRITICAL``   The scheduling run cannot continue and an exception is about to be
               raised.
``ERROR``      | Something has gone wrong but processing continues so that all related
                 problems
               | (typically configuration errors) can be reported before a single raise.
``WARNING``    | Suspicious but tolerated input, such as a discarded optimiser candidate
                 or a default
               | ampacity applied to a line.
``INFO``       | Run milestones: configuration validated, case loaded, plan built, state
                 optimised,
               | artefacts written.
``DEBUG``      Per-iteration detail from the power flow sweep and the swarm kernel.
=============  =========================================================================

Logging and exceptions
----------------------

An exception that halts the run must also be written to the log, so exception handling
follows one of these patterns:

#. A check in the code decides that an exception is needed:

  .. code-block:: python

    if sweep_failed:
        to_raise = DivergenceError("Power flow did not converge")
        LOGGER.critical(to_raise)
        raise to_raise

#. A ``try`` block raises and the exception type needs to change:

  .. code-block:: python

    try:
        frame = pd.read_csv(path)
    except FileNotFoundError as excep:
        LOGGER.critical(excep)
        raise InputError(f"price file not found: {path}") from excep
"""  # noqa: D205, D415

import logging
from pathlib import Path

LOG_FORMAT = "[%(levelname)s] - %(module)s - %(funcName)s(%(lineno)d) - %(message)s"
"""The record format shared by the stream and file handlers."""

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)

LOGGER = logging.getLogger("feeder_scheduler")
""":class:`logging.Logger`: The logger instance used throughout ``feeder_scheduler``."""

FILE_HANDLER_NAME = "fs_logfile"


def add_file_logger(logfile: Path) -> None:
    """Redirect logging to a provided file path.

    A :class:`logging.FileHandler` named ``fs_logfile`` is added to
    :data:`~feeder_scheduler.core.logger.LOGGER` and record propagation is switched off,
    so that messages go only to the file and not to the root stream handler.

    Args:
        logfile: The path to a file to use for logging.

    Raises:
        RuntimeError: If the file handler already exists. To log to a new file, the
            existing handler has to be removed first.
    """

    for handler in LOGGER.handlers:
        if (
            isinstance(handler, logging.FileHandler)
            and handler.name == FILE_HANDLER_NAME
        ):
            raise RuntimeError(f"Already logging to file: {handler.baseFilename}")

    LOGGER.propagate = False

    handler = logging.FileHandler(logfile)
    handler.setFormatter(logging.Formatter(fmt=LOG_FORMAT))
    handler.name = FILE_HANDLER_NAME
    LOGGER.addHandler(handler)
    LOGGER.setLevel(logging.DEBUG)


def remove_file_logger() -> None:
    """Remove the file logger and return to stream logging.

    If the ``fs_logfile`` handler added by
    :func:`~feeder_scheduler.core.logger.add_file_logger` is not present the function
    simply returns.
    """

    try:
        fs_logfile = next(
            handler for handler in LOGGER.handlers if handler.name == FILE_HANDLER_NAME
        )
    except StopIteration:
        return

    fs_logfile.close()
    LOGGER.removeHandler(fs_logfile)
    LOGGER.propagate = True
