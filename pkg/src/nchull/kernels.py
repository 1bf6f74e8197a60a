"""Kernel selection: compiled ``_ckernels`` when importable, else ``_pykernels``.

Set ``NCHULL_PURE_PYTHON=1`` to force the fallback.  Configurations beyond
the compiled word size always use the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_compiled = None

if not os.environ.get("NCHULL_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        _compiled = None


def backend_for(n: int):
    """Kernel module to use for an ``n``-point configuration."""
    if _compiled is not None and n <= _compiled.MAX_N:
        return _compiled
    return _pykernels
