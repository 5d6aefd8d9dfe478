"""Backend selection for the hot kernels.

``POLYSEMI_BACKEND=numba`` (default) compiles kernels with ``numba.njit``;
``POLYSEMI_BACKEND=numpy`` routes every kernel through its vectorised numpy
variant, or runs the loop kernel as plain Python where no vectorised form
exists (the backtracking enumerators).
"""
import os

BACKEND = os.environ.get("POLYSEMI_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"POLYSEMI_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = BACKEND == "numba" and numba is not None


def njit(func):
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def debug_enabled():
    return os.environ.get("POLYSEMI_DEBUG", "") not in ("", "0")


def default_jobs():
    try:
        return max(1, int(os.environ.get("POLYSEMI_JOBS", "1")))
    except ValueError:
        return 1
