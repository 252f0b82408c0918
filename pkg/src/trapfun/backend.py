"""Kernel backend selection.

The hot lattice sweeps exist twice: a Cython extension (trapfun._kernels_c)
and a pure-Python twin (trapfun._kernels_py).  The compiled module is used
when importable; set TRAPFUN_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _kernels_py

_force_pure = os.environ.get("TRAPFUN_PURE_PYTHON", "").strip().lower() not in ("", "0", "false")

if _force_pure:
    _active = _kernels_py
    BACKEND = "pure"
else:
    try:
        from . import _kernels_c as _active  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _active = _kernels_py
        BACKEND = "pure"


def kernels():
    """The active kernel module."""
    return _active


def backend_name() -> str:
    return BACKEND
