"""Kernel backend selection.

The compiled extension is preferred; set ``UNIVALENCE_PURE_PYTHON=1`` to force
the numpy fallback.
"""
import os

if os.environ.get("UNIVALENCE_PURE_PYTHON"):
    from . import _pykernels as kernels

    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels

        BACKEND = "cython"
    except ImportError:  # extension not built
        from . import _pykernels as kernels

        BACKEND = "python"

__all__ = ["kernels", "BACKEND"]
