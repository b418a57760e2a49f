"""Backend dispatch for the hot kernels.

The compiled extension is preferred when present; the pure numpy/scipy
implementation is the fallback.  Set ``KSWAVE_BACKEND=python`` (or
``compiled``) to force a choice, e.g. for the benchmark in ``benchmarks/``.
"""

import os

from . import _kernels_py

_requested = os.environ.get("KSWAVE_BACKEND", "auto").lower()
if _requested not in {"auto", "compiled", "python"}:
    raise RuntimeError(f"KSWAVE_BACKEND must be auto, compiled or python, got {_requested!r}")

if _requested == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        _impl = _kernels_py
        BACKEND = "python"

screened_poisson = _impl.screened_poisson
exp_convolve = _impl.exp_convolve
logistic_profile = _impl.logistic_profile
face_velocities = _impl.face_velocities
upwind_update = _impl.upwind_update


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
