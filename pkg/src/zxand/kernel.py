"""Selects the compiled factor kernels when available.

Set ``ZXAND_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

BACKEND = "python"

if os.environ.get("ZXAND_PURE_PYTHON", "") not in ("", "0"):
    from ._kernel_py import join, marginalize, scatter
else:
    try:
        from ._kernel import join, marginalize, scatter
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._kernel_py import join, marginalize, scatter

__all__ = ["join", "marginalize", "scatter", "BACKEND"]
