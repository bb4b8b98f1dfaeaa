"""Backend selection for the hot kernels.

The kernels in :mod:`sigx._kernels` are plain loops over numpy arrays.  By
default they are compiled with numba; setting ``SIGX_BACKEND=numpy`` keeps
them as interpreted functions (slow, but dependency-light and useful for
debugging and for benchmarking the compiled speedup).

    SIGX_BACKEND=auto    use numba when importable (default)
    SIGX_BACKEND=numba   require numba, fail if missing
    SIGX_BACKEND=numpy   never compile
"""

import os

_choice = os.environ.get("SIGX_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        "SIGX_BACKEND must be one of auto/numba/numpy, got %r" % _choice
    )

_numba = None
if _choice in ("auto", "numba"):
    try:
        import numba as _numba
    except ImportError:
        if _choice == "numba":
            raise

USE_NUMBA = _numba is not None

BACKEND = "numba" if USE_NUMBA else "numpy"


def jit(func):
    """Compile ``func`` with numba when the numba backend is active.

    The interpreted original stays reachable via ``.py_func`` on the
    returned dispatcher, which is what ``sigx bench --kernels`` times
    against the compiled version.
    """
    if USE_NUMBA:
        return _numba.njit(cache=True)(func)
    return func


def py_version(func):
    """Return the interpreted version of a (possibly compiled) kernel."""
    return getattr(func, "py_func", func)
