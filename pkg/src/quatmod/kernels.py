"""Pick the compiled kernels when available, else the Python reference.

Set QUATMOD_PURE=1 to force the Python versions.
"""
from __future__ import annotations

import os

from . import _kernels_py as python

compiled = None
if os.environ.get("QUATMOD_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

dirichlet_euler = _impl.dirichlet_euler
satake_euler = _impl.satake_euler
pfaffian = _impl.pfaffian
