"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``BLOCKVD_PURE=1`` to force the fallback (useful for benchmarking and
differential tests).
"""

from __future__ import annotations

import os

if os.environ.get("BLOCKVD_PURE"):
    from ._gf2 import BACKEND, gf2_independent_rows
else:
    try:
        from ._gf2c import BACKEND, gf2_independent_rows  # type: ignore[no-redef]
    except ImportError:
        from ._gf2 import BACKEND, gf2_independent_rows  # type: ignore[no-redef]

__all__ = ["gf2_independent_rows", "BACKEND"]
