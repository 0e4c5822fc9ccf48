"""The :mod:`~feeder_scheduler.models.network` module describes the radial distribution
feeder and solves its power flow for each system state.

* The :mod:`~feeder_scheduler.models.network.case` submodule loads and checks case
  files describing buses, lines and DER placements.
* The :mod:`~feeder_scheduler.models.network.power_flow` submodule provides the
  backward/forward sweep solver and the reverse power measure.
* The :mod:`~feeder_scheduler.models.network.constants` submodule holds the per-unit
  bases, sweep settings and operating limits.
"""  # noqa: D205, D415
