"""Backend selection for the element-stiffness kernel.

The compiled extension is used when importable; otherwise the numpy
fallback runs. Set GRIDSIZER_PURE_PY=1 to force the fallback (useful for
parity tests and the kernel benchmark).
"""

from __future__ import annotations

import os

from ._assembly_py import element_stiffness_global as _py_kernel
from ._assembly_py import local_stiffness, rotation_matrices

if os.environ.get("GRIDSIZER_PURE_PY"):
    element_stiffness_global = _py_kernel
    BACKEND = "python"
else:
    try:
        from ._kernels import element_stiffness_global  # type: ignore[no-redef]
        BACKEND = "compiled"
    except ImportError:
        element_stiffness_global = _py_kernel
        BACKEND = "python"

__all__ = ["element_stiffness_global", "local_stiffness",
           "rotation_matrices", "BACKEND"]
