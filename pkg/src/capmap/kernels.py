"""Kernel backend selection.

The compiled extension is used when it was built; setting the environment
variable ``CAPMAP_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from capmap import _fallback

try:
    if os.environ.get("CAPMAP_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python backend requested")
    from capmap import _ckernels as compiled
except ImportError:
    compiled = None

python = _fallback
_active = compiled if compiled is not None else python

BACKEND = "cython" if compiled is not None else "python"
f1_double_series = _active.f1_double_series
fekete_ascent = _active.fekete_ascent
