"""Kernel backend selection.

The compiled extension ``mmwidth._speedups`` is preferred when importable;
otherwise the pure-Python twins in ``mmwidth._pure`` are used.  Set the
environment variable ``MMWIDTH_PURE=1`` to force the pure backend.
Both backends implement the same contracts and produce identical results.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("MMWIDTH_PURE") == "1":
    _impl = _pure
    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pure
        BACKEND = "pure"

max_matching_crossing = _impl.max_matching_crossing
mm_cut_table = _impl.mm_cut_table
boundary_value = _impl.boundary_value
boundary_cut_table = _impl.boundary_cut_table
fwidth_dp = _impl.fwidth_dp

# Hard guard for kernel calls: masks must fit comfortably in 64 bits and
# tables in memory, independent of any user-raised solver cap.
GROUND_SET_LIMIT = 20
