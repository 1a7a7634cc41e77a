"""Kernel selection: compiled extension when available, Python otherwise.

Set ``BORDERED_HFK_PURE=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("BORDERED_HFK_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

dominated = _impl.dominated
product_exponents = _impl.product_exponents
gf2_rank = _impl.gf2_rank

__all__ = ["BACKEND", "dominated", "product_exponents", "gf2_rank"]
