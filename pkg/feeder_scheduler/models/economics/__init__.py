"""The :mod:`~feeder_scheduler.models.economics` module evaluates the utility profit
of each system state and of the whole scheduling day.

* The :mod:`~feeder_scheduler.models.economics.ledger` submodule builds the per-state
  revenue and payment ledgers, the optimisation fitness, the constraint checks and the
  load deviation index.
* The :mod:`~feeder_scheduler.models.economics.report` submodule aggregates a day of
  ledgers into the economic and energy equations, serialises the day report and
  compares two runs.
* The :mod:`~feeder_scheduler.models.economics.constants` submodule holds the
  accounting tolerances.
"""  # noqa: D205, D415
