# ============================================================================
# LatticeChoose - Shared Configuration
# ============================================================================
import os

# Storage
DATA_DIR = os.getenv("LC_DATA_DIR", "data")

# Exact oracle budget (DP transition checks per call)
ORACLE_TRANSITION_CAP = int(os.getenv("LC_ORACLE_CAP", "10000000"))

# KAFKA Configuration - unset broker means event streaming is off
KAFKA_BROKER = os.getenv("KAFKA_BROKER")

KAFKA_TOPICS = {
    "solve_events": "latticechoose_solve_events",
    "selftest_results": "latticechoose_selftest_results"
}

# Logging
LOG_FORMAT = '[%(levelname)s] %(message)s'

# Audit Configuration
AUDIT_LOG_FILE = os.path.join(DATA_DIR, "run_log.txt")
AUDIT_ENABLED = os.getenv("LC_AUDIT_ENABLED", "True") == "True"

# Generator defaults
GEN_WIDTH = 8
GEN_HEIGHT = 8
GEN_DENSITY = 0.7
GEN_PALETTE_FACTOR = 3   # palette = 3a colors
GEN_LIST_STYLES = ("uniform", "shifted", "near_identical")
GEN_SHAPES = ("random", "honeycomb")
GEN_HONEYCOMB_HOLES = 0.05   # share of honeycomb vertices deleted at random

# CLI exit codes
EXIT_OK = 0
EXIT_REJECTED = 1        # infeasible / precondition rejection
EXIT_MALFORMED = 2       # malformed input

# Selftest timing targets
SOLVE_M1_MEDIAN_SECONDS = 0.1   # median over the m = 1 instances
SOLVE_M2_MAX_SECONDS = 10.0     # slowest m = 2 instance

# Selftest scales: cases per property check
SELFTEST_SCALES = {
    "smoke": {
        "exhaustive_vertices": 2, "exhaustive_palette": 3, "exhaustive_weight": 2,
        "random_paths": 60, "handle_cases": 4, "lattice_graphs": 40,
        "solve_m1": 10, "solve_m2": 2, "ratio_cases": 3,
    },
    "quick": {
        "exhaustive_vertices": 3, "exhaustive_palette": 3, "exhaustive_weight": 2,
        "random_paths": 1000, "handle_cases": 40, "lattice_graphs": 500,
        "solve_m1": 200, "solve_m2": 20, "ratio_cases": 20,
    },
    "full": {
        "exhaustive_vertices": 4, "exhaustive_palette": 3, "exhaustive_weight": 2,
        "random_paths": 10000, "handle_cases": 1000, "lattice_graphs": 5000,
        "solve_m1": 2000, "solve_m2": 200, "ratio_cases": 200,
    },
}
