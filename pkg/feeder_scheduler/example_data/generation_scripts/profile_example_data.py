"""Synthetic historical profiles for the ``feeder_scheduler run`` example data.

This script writes thirty days of hourly SPV, WT and load multiplying factors to the
``data/profiles`` folder. The values are normalised: SPV and WT factors are fractions
of the unit rating and load factors are fractions of the peak demand, itself 1.3 times
the nominal demand of the case.

The profiles are deterministic smooth shapes modulated from day to day, so that the
historical days spread around their mean without relying on a random generator:

* SPV follows a half sine between 06:00 and 18:00 and is zero overnight.
* WT is strongest in the early hours and varies on an eleven day cycle.
* Load has a late morning shoulder and an evening peak around 20:00.

The first fifteen days are tagged as month 5 and the remaining days as month 6, so the
``uncertainty.month`` setting can select either month.
"""

from pathlib import Path

import numpy as np
import pandas as pd

n_days = 30
days = np.arange(1, n_days + 1)
months = np.where(days <= 15, 5, 6)
hours = np.arange(24)

# Shapes over the hours of the day
spv_shape = np.where(
    (hours > 6) & (hours < 18), np.sin(np.pi * (hours - 6) / 12), 0.0
)
wt_shape = 0.4 + 0.15 * np.cos(2 * np.pi * (hours - 3) / 24)
load_shape = (
    0.55
    + 0.2 * np.exp(-(((hours - 11) / 3) ** 2))
    + 0.3 * np.exp(-(((hours - 20) / 2.5) ** 2))
)

# Day to day modulation
spv_day = (
    0.8 + 0.12 * np.sin(2 * np.pi * days / 9) + 0.05 * np.cos(2 * np.pi * days / 4)
)
wt_day = 1 + 0.3 * np.sin(2 * np.pi * days / 11 + 1)
load_day = (
    1 + 0.05 * np.sin(2 * np.pi * days / 7) + 0.02 * np.cos(2 * np.pi * days / 3)
)

profiles = {
    "spv": 0.95 * np.outer(spv_day, spv_shape),
    "wt": np.outer(wt_day, wt_shape),
    "load": np.outer(load_day, load_shape),
}

out_dir = Path(__file__).parent.parent / "data" / "profiles"
out_dir.mkdir(parents=True, exist_ok=True)

for name, values in profiles.items():
    frame = pd.DataFrame(values, columns=[f"h{hour:02d}" for hour in hours])
    frame.insert(0, "month", months)
    frame.insert(0, "day", days)
    frame.to_csv(out_dir / f"{name}.csv", index=False, float_format="%.4f")
