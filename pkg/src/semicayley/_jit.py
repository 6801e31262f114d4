"""numba switch.

Setting ``SEMICAYLEY_NO_NUMBA=1`` (or running without numba installed) makes
every kernel in :mod:`semicayley.kernels` use its pure-numpy implementation.
"""

import os


def _noop_jit(f=None, **kwargs):
    if f is None:
        return lambda g: g
    return f


def _have_numba():
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


HAVE_NUMBA = _have_numba()
DISABLED = os.environ.get("SEMICAYLEY_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
USE_NUMBA = HAVE_NUMBA and not DISABLED

if HAVE_NUMBA:
    import functools

    import numba

    njit = functools.partial(numba.njit, cache=True)
else:
    njit = _noop_jit
