"""The :mod:`~feeder_scheduler.models.dms` module is the decision mechanism system of
the scheduler. It splits the scheduling day into charge, standby and discharge states
using the mean grid price, sets a priori dispatch limits for every battery and the
dispatch window of the microturbines, and prices the fictitious charges on battery
energy.

* The :mod:`~feeder_scheduler.models.dms.plan` submodule holds the price signal, the
  allocation rules and the plan builder.
* The :mod:`~feeder_scheduler.models.dms.constants` submodule holds the settings of the
  decision mechanism.
"""  # noqa: D205, D415
