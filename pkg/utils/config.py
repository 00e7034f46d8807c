# utils/config.py
import logging
import math
import os

# Numerical tolerances.
NORM_TOL = 1e-8
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
RANK_TOL = 1e-10
# Singular values at or below this fraction of the largest are treated as exact zeros.
SCHMIDT_RTOL = 1e-13
# Partition scores at or below this value make a geometric mean exactly 0.
SCORE_FLOOR = 1e-300
ENSEMBLE_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8

# Load-time normalization band for state files.
LOAD_REPAIR_TOL = 1e-6

# Default cap for pi_part: n! * dim^2 for eight qubits.
PI_PART_BUDGET = math.factorial(8) * (2 ** 8) ** 2

# Convex-roof search defaults.
DEFAULT_RESTARTS = 32
DEFAULT_REFINE_ITERS = 200
DEFAULT_SEARCH_TOLERANCE = 1e-7
REFINE_STOP_RTOL = 1e-9

DEFAULT_KINK_FACTOR = 10.0

REPORT_DIGITS = 12

# Environment overrides.
ENTHIER_THREADS = int(os.getenv("ENTHIER_THREADS", "1"))
ENTHIER_LOG_LEVEL = os.getenv("ENTHIER_LOG_LEVEL", "WARNING").upper()

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def resolve_seed(seed: int) -> int:
    """ENTHIER_SEED, when set, wins over a seed passed on the command line."""
    env_seed = os.getenv("ENTHIER_SEED")
    if env_seed is None or env_seed == "":
        return seed
    try:
        value = int(env_seed)
    except ValueError:
        value = -1
    if value < 0:
        logging.warning(f"Ignoring ENTHIER_SEED={env_seed!r}, not a non-negative integer; using seed {seed}")
        return seed
    return value
