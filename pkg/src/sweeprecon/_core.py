"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
implementations are used. Setting ``SWEEPRECON_PURE=1`` forces the fallback.
"""
import os

from . import _fallback

BACKEND = "python"

if os.environ.get("SWEEPRECON_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
else:
    _impl = _fallback

label4 = _impl.label4
trace_rows = _impl.trace_rows
sample_rows = _impl.sample_rows
row_runs = _fallback.row_runs

BACKENDS = {"python": _fallback}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl
