"""Kernel selection: compiled core if importable, pure Python otherwise.

Set ``NCAD_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("NCAD_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        from . import _kernels_py as kernels

int_matmul = kernels.int_matmul
content = kernels.content
BACKEND = kernels.BACKEND
