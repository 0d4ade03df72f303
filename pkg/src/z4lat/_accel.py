"""Numba switch.

Hot kernels are compiled with numba unless ``Z4LAT_NO_NUMBA`` is set to a
truthy value (or numba is not importable), in which case the pure-numpy
implementations in :mod:`z4lat.kernels` are dispatched instead.
"""

from __future__ import annotations

import os

_DISABLED = os.environ.get("Z4LAT_NO_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

# TBB in this image is too old for numba; pick the portable pool up front.
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise the identity decorator.

    Compilation is lazy, so decorating is cheap even when the numpy path is
    selected; the jitted function is simply never called then.
    """
    if HAVE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


if HAVE_NUMBA:
    prange = numba.prange
else:  # pragma: no cover
    prange = range
