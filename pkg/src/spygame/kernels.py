"""Kernel backend selection.

The compiled extension is used when importable; set ``SPYGAME_PURE_PYTHON=1``
to force the numpy fallback.
"""

from __future__ import annotations

import os

if os.environ.get("SPYGAME_PURE_PYTHON", "") not in ("", "0"):
    from spygame import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from spygame import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        from spygame import _pykernels as _impl

        BACKEND = "python"

guard_move_table = _impl.guard_move_table
attractor = _impl.attractor

__all__ = ["BACKEND", "attractor", "guard_move_table"]
