"""Backend selection for the RK4 hot loop.

The compiled extension is used when it imports; setting
SUBLORENTZ_PURE_PYTHON=1 forces the numpy fallback.
"""
import os

from . import _kernels_py

BACKEND = "python"
rk4_batch = _kernels_py.rk4_batch

if os.environ.get("SUBLORENTZ_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        rk4_batch = _compiled.rk4_batch
