"""Pick the compiled kernels when present, else the pure-Python ones."""
import os

if os.environ.get("QBAILEY_PURE", "") not in ("", "0"):
    from ._pykernels import inv_trunc, mul_trunc
    BACKEND = "python"
else:
    try:
        from ._kernels import inv_trunc, mul_trunc
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._pykernels import inv_trunc, mul_trunc
        BACKEND = "python"

__all__ = ["BACKEND", "inv_trunc", "mul_trunc"]
