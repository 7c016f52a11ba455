"""
Configuration file for the application.
"""
import os

# Application information
APP_NAME = "TropReg"
APP_VERSION = "1.0.0"

# Logging configuration
LOG_FILE = os.environ.get("TROPREG_LOG_FILE", "data/logs/tropreg.log")  # "" disables the file handler
LOG_LEVEL = os.environ.get("TROPREG_LOG_LEVEL", "WARNING")  # DEBUG, INFO, WARNING, ERROR, CRITICAL

# Threads for independent solver runs (multistart, row fits, half-sweeps)
THREADS_ENV_VAR = "TROPREG_THREADS"

# Reproducibility
DEFAULT_SEED = 0

# Newton / multistart defaults
NEWTON_MU = 1.0
REFINE_MU = 0.05
STALL_WINDOW = 5
MAX_ITER = 500
TOL = 1e-10
MULTISTART_STARTS = 10

# Floating-point tolerances of the pattern machinery
FEASIBILITY_TOL = 1e-9
ADMISSIBILITY_TOL = 1e-9
DESCENT_TIE_TOL = 1e-9

# Steepest descent
ENUMERATION_CAP = 4096
MAX_SEGMENTS = 500
EXIT_TIME_HORIZON = 50.0  # crossings beyond horizon / min rate count as never
EXIT_TIME_XTOL = 1e-12

# Exhaustive search / oracles
EXHAUSTIVE_SIZE_CAP = 14  # n + d
GRID_POINT_CAP = 10**8
BINARY_DESCENT_CAP = 20

# IRSLS
IRSLS_MAX_ITER = 500
IRSLS_DIVERGENCE_FACTOR = 40.0

# Factorization
FACTOR_STALL_WINDOW = 20
FACTOR_MAX_ITER = 2000
JACOBI_STEPS = 3
FACTOR_MIN_MU = 0.05
FACTOR_MU_DECAY = 0.9
INNER_STARTS = 3
ALTERNATING_MAX_SWEEPS = 100
FACTOR_RESTARTS = 1

# Data files
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")
DOLPHINS_FILE = os.environ.get("TROPREG_DOLPHINS_FILE", os.path.join(DATA_DIR, "dolphins.txt"))
