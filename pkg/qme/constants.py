from __future__ import annotations

import math

VERSION = "0.1.0"

# Numerical tolerances
NORMALIZATION_TOL = 1e-12
HERMITIAN_TOL = 1e-10
ORTHONORMAL_TOL = 1e-10
DIAGONAL_TOL = 1e-10
PROBABILITY_CLAMP = 1e-14
NEGATIVE_PROBABILITY_TOL = 1e-12
LEDGER_TOL = 1e-10
DECOMPOSITION_TOL = 1e-9

# Largest N simulated with full state vectors (dim 2**12 = 4096)
EXACT_PATH_CAP = 12

COMPLEMENT_LABEL = "complement"

EXPERIMENT_CYCLE = "cycle"
EXPERIMENT_REGION = "region"
EXPERIMENT_FIG2 = "fig2"
EXPERIMENT_SCALING = "scaling"
EXPERIMENT_GHZ_SCALING = "ghz-scaling"
EXPERIMENT_DECOMPOSITION = "decomposition"
EXPERIMENT_KINDS = (
    EXPERIMENT_CYCLE,
    EXPERIMENT_REGION,
    EXPERIMENT_FIG2,
    EXPERIMENT_SCALING,
    EXPERIMENT_GHZ_SCALING,
    EXPERIMENT_DECOMPOSITION,
)

DEFAULT_TEMPERATURE = 0.1
DEFAULT_EPSILON = 1.0
DEFAULT_N_LIST = (1, 2, 6, 10, 20)
DEFAULT_Q_GRID = (0.05, 0.95, 19)
DEFAULT_THETA_GRID = (0.0, math.pi / 2, 21)
DEFAULT_DELTA_E_POINTS = 200
DEFAULT_SCALING_N_LIST = (1, 10, 100, 1_000, 10_000, 100_000)
DEFAULT_WORKERS = 4

EXIT_CONFIG_ERROR = 2
EXIT_INVARIANT_FAILURE = 3

# ΔE at or below this is treated as "no energy input" (efficiency undefined)
MIN_DELTA_E = 1e-12
