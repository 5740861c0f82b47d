"""Backend selection for the ℕ^× sieve kernels.

The compiled extension is used when it imports; setting
``GENSCALE_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
from __future__ import annotations

import os

from genscale import _nxkernel_py as pure

if os.environ.get("GENSCALE_PURE_PYTHON") == "1":
    kernel = pure
    BACKEND = "python"
else:
    try:
        from genscale import _nxkernel as kernel  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        kernel = pure
        BACKEND = "python"

product_counts = kernel.product_counts
first_collision = kernel.first_collision
membership = kernel.membership
zeta_sum = kernel.zeta_sum
