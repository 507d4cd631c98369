"""Optional numba acceleration.

Set ``DISPERSION_NO_NUMBA=1`` to force the pure-numpy code paths, e.g. for
debugging or on platforms without numba.
"""

import os


def _noop_jit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def wrap(f):
        return f

    return wrap


def _have_numba():
    if os.environ.get("DISPERSION_NO_NUMBA", "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401

        return True
    except ImportError:
        return False


# True when the compiled kernels are in use
HAVE_NUMBA = _have_numba()

if HAVE_NUMBA:
    from numba import njit
else:
    njit = _noop_jit


def worker_count():
    """Worker threads allowed by ``DISPERSION_WORKERS`` (default 1)."""
    raw = os.environ.get("DISPERSION_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
