"""Backend selection for the search kernels.

The compiled extension ``_ckernels`` is used when it imports and the inputs
fit in 64-bit words; otherwise calls fall through to ``_pykernels``. Set
``ECCACHE_PURE_PYTHON=1`` to force the Python backend.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("ECCACHE_PURE_PYTHON"):
        raise ImportError("pure Python backend forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def backends():
    """Available backend modules keyed by name (used by tests and benchmarks)."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out


def _fast(*widths):
    return _ckernels is not None and all(w <= 64 for w in widths)


def rank(rows, width):
    if _fast(width):
        return _ckernels.rank(rows)
    return _pykernels.rank(rows)


def min_weight(rows, width):
    if _fast(width):
        return _ckernels.min_weight(rows)
    return _pykernels.min_weight(rows)


def alpha(n, demands, side):
    if _fast(n) and n <= 30:
        return _ckernels.alpha(n, demands, side)
    return _pykernels.alpha(n, demands, side)


def minrank(n, demands, side, lower_hint=0):
    if _fast(n):
        return _ckernels.minrank(n, demands, side, lower_hint)
    return _pykernels.minrank(n, demands, side, lower_hint)


def systematic_search(k, d, n, canonical=False):
    if _fast(n - k + 1) and k <= 24:
        return _ckernels.systematic_search(k, d, n, canonical)
    return _pykernels.systematic_search(k, d, n, canonical)


def coset_table(h_cols, n, max_weight):
    if _fast(n):
        return _ckernels.coset_table(h_cols, n, max_weight)
    return _pykernels.coset_table(h_cols, n, max_weight)
