"""The :mod:`~feeder_scheduler.core` module contains the shared infrastructure of the
scheduler: configuration loading and validation, the module registry, constants
handling, logging, exceptions and the loading and storage of day inputs.
"""  # noqa: D205, D415
