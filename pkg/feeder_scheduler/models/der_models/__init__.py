"""The :mod:`~feeder_scheduler.models.der_models` module models the distributed energy
resources on the feeder.

* The :mod:`~feeder_scheduler.models.der_models.devices` submodule defines the device
  descriptors (renewable units, microturbines and batteries), the device fleet built
  from a case and the per-state dispatch set-point.
* The :mod:`~feeder_scheduler.models.der_models.storage` submodule provides the battery
  dispatch clamps and state of charge dynamics.
* The :mod:`~feeder_scheduler.models.der_models.constants` submodule holds the default
  device parameters.
"""  # noqa: D205, D415
