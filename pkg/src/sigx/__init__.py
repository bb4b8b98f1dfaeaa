"""sigx: compressed full-text self-index.

Preprocesses a byte string into structures built on its LZ77 parse and a
randomized signature grammar, then reports every occurrence of arbitrary
patterns exactly, routing by pattern length.
"""

from ._backend import BACKEND, USE_NUMBA
from .planner import CompressedIndex, PlannerConfig, build_all, locate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "USE_NUMBA",
    "CompressedIndex",
    "PlannerConfig",
    "build_all",
    "locate",
    "__version__",
]
