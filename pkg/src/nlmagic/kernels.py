"""Backend selection for the principal-minor kernels.

The compiled extension is used when it was built; setting ``NLMAGIC_PURE=1``
forces the numpy implementation.
"""
import os

from . import _minors

BACKEND = "python"
minor_power_sum = _minors.minor_power_sum
minor_dets = _minors.minor_dets

if not os.environ.get("NLMAGIC_PURE"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        minor_power_sum = _kernels.minor_power_sum
        minor_dets = _kernels.minor_dets


def backends():
    """Available ``{name: module}`` pairs, for cross-checking and benchmarking."""
    out = {"python": _minors}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
