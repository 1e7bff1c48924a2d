"""Backend selection for the morphology kernels.

The compiled extension is used when importable; set ``MORPHDET_BACKEND``
to ``python`` to force the numpy fallback, or to ``cython`` to fail loudly
when the extension is missing.
"""

import os

from . import _kernels_py

_requested = os.environ.get("MORPHDET_BACKEND", "auto").lower()

if _requested == "python":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _kernels_py

BACKEND = _impl.BACKEND
erode_planes = _impl.erode_planes
dilate_planes = _impl.dilate_planes
open_close_heights = _impl.open_close_heights

__all__ = ["BACKEND", "erode_planes", "dilate_planes", "open_close_heights"]
