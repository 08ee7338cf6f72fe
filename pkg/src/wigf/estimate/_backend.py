"""Pick the compiled kernels when available.

Set ``WIGF_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

BACKEND = "python"
if os.environ.get("WIGF_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _kernels_py as kernels
else:
    from . import _kernels_py as kernels

__all__ = ["kernels", "BACKEND"]
