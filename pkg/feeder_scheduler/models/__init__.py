"""The :mod:`~feeder_scheduler.models` package holds the scheduler modules. Each module
is a sub-package with its own ``module_schema.json`` and ``constants.py``, registered
with the :data:`~feeder_scheduler.core.registry.MODULE_REGISTRY` when a configuration
includes a section of the same name.
"""  # noqa: D205, D415
