"""Backend selection for the bitset kernels.

The compiled extension handles instances with n <= 63 and scaled weights
within int64; anything else (and everything when CONNCUT_PURE=1 is set or
the extension failed to build) runs on the pure-Python twin, which has
identical semantics.
"""

from __future__ import annotations

import os

from . import _bitset_py as _py

if os.environ.get("CONNCUT_PURE"):
    _cy = None
else:
    try:
        from . import _bitset_cy as _cy  # type: ignore[attr-defined]
    except ImportError:
        _cy = None

# Cut values are bounded by the total scaled weight; stay clear of int64.
_INT64_CAP = 1 << 62


def backend_name() -> str:
    return "compiled" if _cy is not None else "python"


def has_compiled() -> bool:
    return _cy is not None


def is_connected_mask(adj, mask: int, n: int) -> bool:
    if _cy is not None and n <= 63:
        return _cy.is_connected_mask(adj, mask)
    return _py.is_connected_mask(adj, mask)


def best_connected_cut(n: int, adj, nbrs, wts, total_scaled_weight: int):
    """Dispatch the connected-subset argmax-cut enumeration."""
    if _cy is not None and n <= 63 and total_scaled_weight < _INT64_CAP:
        return _cy.best_connected_cut(n, adj, nbrs, wts)
    return _py.best_connected_cut(n, adj, nbrs, wts)
