"""Selects the double description kernel at import time.

The Cython build (``chowbench._ddcore``) works in 64-bit integers and raises
OverflowError when an intermediate would not fit; in that case the call is
repeated with the arbitrary-precision pure-Python kernel.  Setting
``CHOWBENCH_PURE=1`` skips the compiled kernel entirely.
"""

from __future__ import annotations

import logging
import os

from . import _ddpy

log = logging.getLogger(__name__)

try:
    if os.environ.get("CHOWBENCH_PURE", "") not in ("", "0"):
        raise ImportError("pure kernel requested")
    from . import _ddcore  # type: ignore[attr-defined]
except ImportError:
    _ddcore = None

BACKEND = "cython" if _ddcore is not None else "python"


def extreme_rays(rows, d: int, backend: str | None = None):
    """Extreme rays and zero-set bitmasks of the pointed cone ``{x : A x >= 0}``."""
    use = backend or BACKEND
    if use == "cython":
        if _ddcore is None:
            raise RuntimeError("compiled kernel is not available")
        try:
            return _ddcore.extreme_rays(rows, d)
        except OverflowError:
            log.debug("int64 overflow in compiled kernel; falling back to Python")
    return _ddpy.extreme_rays(rows, d)
