#!/usr/bin/env python3
"""Regenerates trend_reference.json from scipy.stats.linregress.

The JSON file freezes slope/intercept/p-value/stderr for 50 random series
so the C++ tests can compare against an independent reference without a
runtime Python dependency. Run from this directory:

    python3 gen_trend_reference.py
"""
import json

import numpy as np
from scipy import stats

rng = np.random.default_rng(20260813)

cases = []
for _ in range(50):
    length = int(rng.integers(3, 13))
    scale = float(rng.uniform(0.1, 4.0))
    slope = float(rng.normal(0.0, 1.0))
    series = slope * np.arange(1, length + 1) + rng.normal(0.0, scale, length)
    x = np.arange(1, length + 1, dtype=float)
    fit = stats.linregress(x, series)
    cases.append(
        {
            "series": [float(v) for v in series],
            "slope": fit.slope,
            "intercept": fit.intercept,
            "p_value": fit.pvalue,
            "stderr": fit.stderr,
        }
    )

with open("trend_reference.json", "w") as fh:
    json.dump(cases, fh, indent=1)
    fh.write("\n")
print(f"wrote {len(cases)} cases")
