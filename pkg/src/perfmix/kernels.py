"""Kernel dispatch: compiled extension when importable, numpy fallback otherwise.

Set ``PERFMIX_PURE=1`` to force the fallback.  ``BACKEND`` names the choice.
"""

from __future__ import annotations

import os

from . import _pykernels as py

if os.environ.get("PERFMIX_PURE", "") not in ("", "0"):
    _impl = py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = py
        BACKEND = "python"

bfs_nearest = _impl.bfs_nearest
min_label_edge = _impl.min_label_edge
pair_distance_histogram = _impl.pair_distance_histogram
cross_min_distance = _impl.cross_min_distance
span_weight_histogram = _impl.span_weight_histogram


def threads_cap() -> int:
    """Worker cap from ``PERFMIX_THREADS`` (kernels themselves run serially)."""
    raw = os.environ.get("PERFMIX_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return os.cpu_count() or 1
