"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
twin is the fallback.  Set ``TRISECT_PURE=1`` to force the fallback
(useful for benchmarking and debugging).  Both backends implement the
identical algorithm and produce identical output.
"""

import os

from . import _pure

if os.environ.get("TRISECT_PURE"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = _pure

snf = _impl.snf
matmul = _impl.matmul
BACKEND = _impl.BACKEND

__all__ = ["snf", "matmul", "BACKEND"]
