"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``COHDETECT_DISABLE_NUMBA`` is unset or ``0``. Both modules expose
the same three functions, so tests and the benchmark can address either one
directly through :data:`BACKENDS`.
"""

import os

from . import _numpy

BACKENDS = {"numpy": _numpy}

try:
    from . import _numba
except ImportError:  # numba missing or broken
    _numba = None
else:
    BACKENDS["numba"] = _numba


def _select():
    flag = os.environ.get("COHDETECT_DISABLE_NUMBA", "").strip().lower()
    if flag not in ("", "0", "false", "no") or _numba is None:
        return "numpy"
    return "numba"


BACKEND = _select()
_impl = BACKENDS[BACKEND]

jacobi_eigh = _impl.jacobi_eigh
project_simplex = _impl.project_simplex
trace_distance_descent = _impl.trace_distance_descent

__all__ = ["BACKEND", "BACKENDS", "jacobi_eigh", "project_simplex",
           "trace_distance_descent"]
