"""Kernel backend selection.

Hot inner loops exist twice: a numba @njit version and a pure-numpy
fallback. The active backend is chosen once at import time from the
COMMDYN_BACKEND environment variable:

    COMMDYN_BACKEND=numba   force numba (error if not importable)
    COMMDYN_BACKEND=numpy   force the pure-numpy path
    unset                   numba if available, else numpy

`USE_NUMBA` may also be flipped at runtime (e.g. by the backend
benchmark); dispatching functions read it on every call.
"""

from __future__ import annotations

import os

_env = os.environ.get("COMMDYN_BACKEND", "").strip().lower()

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba installed in CI
    numba = None
    HAVE_NUMBA = False

if _env == "numpy":
    USE_NUMBA = False
elif _env == "numba":
    if not HAVE_NUMBA:
        raise ImportError("COMMDYN_BACKEND=numba but numba is not importable")
    USE_NUMBA = True
elif _env == "":
    USE_NUMBA = HAVE_NUMBA
else:
    raise ValueError(f"COMMDYN_BACKEND must be 'numba' or 'numpy', got {_env!r}")


def backend() -> str:
    """Name of the currently active kernel backend."""
    return "numba" if USE_NUMBA else "numpy"


def set_backend(name: str) -> None:
    """Switch the kernel backend at runtime ('numba' or 'numpy')."""
    global USE_NUMBA
    if name == "numba":
        if not HAVE_NUMBA:
            raise ValueError("numba backend requested but numba is not importable")
        USE_NUMBA = True
    elif name == "numpy":
        USE_NUMBA = False
    else:
        raise ValueError(f"unknown backend {name!r}")


if HAVE_NUMBA:

    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

else:  # pragma: no cover

    def njit(*args, **kwargs):
        def deco(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return deco
