"""Select the compiled kernels when built, else the pure-Python ones.

Set ``CSP_PLACEMENT_PURE=1`` to force the fallback.
"""
import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if not os.environ.get("CSP_PLACEMENT_PURE"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"
