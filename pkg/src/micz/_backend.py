"""Select the compiled kernel module, or the pure-Python fallback.

Set ``MICZ_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("MICZ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

sturm_count = _impl.sturm_count
bisect_eigenvalues = _impl.bisect_eigenvalues
terminating_series = _impl.terminating_series

__all__ = ["BACKEND", "sturm_count", "bisect_eigenvalues", "terminating_series"]
