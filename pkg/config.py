import os
import sys


def _base_path():
    """Base path in a source checkout or a frozen bundle."""
    if getattr(sys, 'frozen', False):
        return sys._MEIPASS
    return os.path.dirname(os.path.abspath(__file__))


BASE_PATH = _base_path()
KNOWN_SOLUTIONS_PATH = os.path.join(BASE_PATH, 'data', 'known_solutions.json')

# Sweep pipeline
DEFAULT_SIEVE_PRIMES = (5, 7, 11, 13, 31)
SQUARE_PREFILTER_MODULI = (64, 63, 65, 11)
DEFAULT_RESIDUAL_CAP = 10_000
DEFAULT_JOBS = 1
POOL_CHUNKSIZE = 8            # (a,b) pairs handed to a worker at a time

# The box of the published solution table: 2 <= a < b <= 100, 2 <= n <= 200, m = 1
TABLE_A_RANGE = (2, 100)
TABLE_B_RANGE = (2, 100)
TABLE_N_MAX = 200

# Output
DEFAULT_FORMAT = 'json'
OUTPUT_FORMATS = ('json', 'csv')

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
