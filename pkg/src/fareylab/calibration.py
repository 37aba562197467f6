"""Frozen calibration constants for the regression-style checks.

Each value was recorded on the first calibration run at the stated
parameters and committed; reruns are deterministic (fixed seeds, fixed
summation order), so later results must stay at or below the ceilings and
inside the bands.  These are empirical regression anchors, not derived
constants.
"""

# Ratio (sum of phi(r)^(n-1) for r <= H) / H^n over H in TOTIENT_MOMENT_GRID.
# Measured values: n=2 in [0.3042, 0.3058], n=3 in [0.1404, 0.1452].
TOTIENT_MOMENT_GRID = (100, 200, 400, 800)
TOTIENT_MOMENT_BANDS = {
    2: (0.290, 0.320),
    3: (0.135, 0.150),
}

# Max of total / ((U+V)^n * Q * (log Q)^(2^n - 2)) over Q in MOMENT_GRID
# with a = 1 and U = V = isqrt(Q).  Measured maxima: 0.1215812 (n=1, at
# Q=500) and 0.0026499 (n=2, at Q=500).
MOMENT_GRID = (500, 1000, 2000, 4000)
MOMENT_RATIO_CEILINGS = {
    1: 0.121582,
    2: 0.002650,
}

# Max of N / (H_1 H_2 (log(H+2))^3) over 200 seeded random instances with
# H_j <= 40, |a_j| <= 10, |offsets| <= 100.  Measured: 0.0321101.
BOUND_REGRESSION_SEED = 20260810
BOUND_REGRESSION_SAMPLES = 200
BOUND_REGRESSION_H_MAX = 40
BOUND_REGRESSION_COEFF_BOUND = 10
BOUND_REGRESSION_OFFSET_BOUND = 100
BOUND_REGRESSION_RATIO_CEILING = 0.032111
