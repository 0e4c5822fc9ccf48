"""The :mod:`~feeder_scheduler.models.optimizer` module schedules the utility units
state by state, maximising the fitness of each system state within the limits set by
the decision mechanism plan.

* The :mod:`~feeder_scheduler.models.optimizer.swarm` submodule provides the bounded
  herd swarm search used for every state.
* The :mod:`~feeder_scheduler.models.optimizer.scheduler` submodule decodes candidate
  dispatches, evaluates them through the power flow and chains the states of the day.
* The :mod:`~feeder_scheduler.models.optimizer.constants` submodule holds the swarm
  settings and the constraint penalty weights.
"""  # noqa: D205, D415
