"""
Shared configuration for the cultural-currents project.

This module provides centralized default values used by the experiment
scripts, the command-line front end and the library modules.
"""

# Base seed for experiments when neither the config file nor the command line sets one
DEFAULT_SEED = 20150201

# Replicates per experiment cell (the "full" scale)
DEFAULT_REPLICATES = 30

# Creator fraction (C) and creator invention probability (p) grids, 0.1..1.0
DEFAULT_C_GRID = [round(0.1 * i, 1) for i in range(1, 11)]
DEFAULT_P_GRID = [round(0.1 * i, 1) for i in range(1, 11)]

# Zstandard level for world snapshots (1-22, where 22 is maximum compression)
DEFAULT_ZSTD_LEVEL = 22

# Environment variable capping the number of worker processes
THREADS_ENV_VAR = "EVOC_THREADS"

# Environment variable selecting the experiment scale of the numbered scripts
EXPERIMENT_SCALE_ENV_VAR = "EXPERIMENT_SCALE"

# Replicates and grids per scale; "full" is the desk-scale reproduction
EXPERIMENT_SCALES = {
    "quick": {
        "replicates": 8,
        "c_grid": [0.1, 0.3, 0.5, 0.7, 1.0],
        "p_grid": [0.1, 0.3, 0.5, 0.7, 1.0],
    },
    "full": {
        "replicates": DEFAULT_REPLICATES,
        "c_grid": DEFAULT_C_GRID,
        "p_grid": DEFAULT_P_GRID,
    },
}

# Social regulation step (delta) per landscape for the paired experiments
SR_DELTAS = {"ref6x3": 0.25, "chain6x3": 0.2}
