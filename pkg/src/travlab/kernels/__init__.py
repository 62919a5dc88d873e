"""Graph kernels used by the traversal code.

The compiled module is used when it was built; set ``TRAVLAB_PURE_PYTHON=1``
to force the pure-Python versions.  ``BACKEND`` names the active one.
"""

import os

from . import _pykernels

if os.environ.get("TRAVLAB_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

TRAVERSAL, BFT, DFT = _pykernels.TRAVERSAL, _pykernels.BFT, _pykernels.DFT

order_flags = _impl.order_flags
bfs_distances = _impl.bfs_distances
canonical_bft = _impl.canonical_bft

__all__ = ["BACKEND", "TRAVERSAL", "BFT", "DFT", "order_flags", "bfs_distances", "canonical_bft"]
