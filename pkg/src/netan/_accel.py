"""Backend selection for the hot kernels.

Two interchangeable kernel implementations exist:

* ``_kernels_jit`` -- numba ``@njit``-compiled scalar loops (default),
* ``_kernels_py``  -- pure numpy/python fallback.

The active backend is chosen once, at import time, from the ``NETAN_JIT``
environment variable: set ``NETAN_JIT=0`` (or ``off``/``false``/``no``) to
force the fallback.  Any other value (or the variable being unset) enables
numba if it is importable.  ``netan.kernels.BACKEND`` reports the choice.

Thread count for parallel kernels follows numba's own controls; use
``set_threads`` (or the CLI ``--threads`` flag / ``NETAN_THREADS``).
"""

from __future__ import annotations

import os

_OFF = {"0", "off", "false", "no"}


def _jit_requested() -> bool:
    return os.environ.get("NETAN_JIT", "").strip().lower() not in _OFF


JIT_ENABLED = False
if _jit_requested():
    try:
        import warnings

        import numba  # noqa: F401

        # the sandboxed TBB probe warning is noise; omp/workqueue still work
        warnings.filterwarnings(
            "ignore", message=".*TBB.*", category=numba.NumbaWarning
        )
        JIT_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
        JIT_ENABLED = False


def set_threads(n: int) -> None:
    """Set the worker count for parallel kernels (no-op on the fallback)."""
    if n < 1:
        raise ValueError("thread count must be >= 1")
    if JIT_ENABLED:
        import numba

        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def get_threads() -> int:
    if JIT_ENABLED:
        import numba

        return numba.get_num_threads()
    return 1
