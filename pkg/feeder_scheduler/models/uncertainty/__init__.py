"""The :mod:`~feeder_scheduler.models.uncertainty` module generates the synthetic SPV,
WT and load profiles of the scheduling day from historical data.

* The :mod:`~feeder_scheduler.models.uncertainty.envelope` submodule builds the
  uncertainty envelope of a historical series and draws synthetic days inside it.
* The :mod:`~feeder_scheduler.models.uncertainty.constants` submodule holds the
  settings of the synthetic day sampler.
"""  # noqa: D205, D415
