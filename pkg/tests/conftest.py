"""Shared test configuration.

Every randomized test draws from a named seed in SEEDS so reruns are
bit-reproducible; add a new entry instead of hardcoding seeds in tests.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

SEEDS = {
    "linalg": 101,
    "freesets": 202,
    "solver": 303,
    "thermo": 404,
    "channels": 505,
    "scenarios": 606,
    "acceptance": 707,
}
