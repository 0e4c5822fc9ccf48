"""The :mod:`~feeder_scheduler.example_data` module contains an example feeder day for
trying out the scheduler: the 33-bus case with its DER placements, a day-ahead price
signal and synthetic historical SPV, WT and load profiles.
"""  # noqa: D205, D415
