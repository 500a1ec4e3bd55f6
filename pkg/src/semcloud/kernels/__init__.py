"""Force-kernel backend selection.

Prefers the compiled Cython extension; falls back to the numpy reference
implementation when the extension is missing or SEMCLOUD_PURE=1 is set.
"""

from __future__ import annotations

import os

if os.environ.get("SEMCLOUD_PURE", "") == "1":
    from . import _ref as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _ref as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
repulsion = _impl.repulsion
attraction = _impl.attraction
max_overlap_depth = _impl.max_overlap_depth
settle_loop = _impl.settle_loop
resolve_overlaps = _impl.resolve_overlaps

__all__ = [
    "BACKEND",
    "repulsion",
    "attraction",
    "max_overlap_depth",
    "settle_loop",
    "resolve_overlaps",
]
