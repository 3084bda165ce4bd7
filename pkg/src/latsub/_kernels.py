"""Select the subset-scan backend at import time.

The compiled extension is preferred; ``LATSUB_BACKEND=python`` forces the
numpy fallback.
"""

from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

BACKENDS = {"python": _pykernel}
if _ckernel is not None:
    BACKENDS["compiled"] = _ckernel

if os.environ.get("LATSUB_BACKEND", "").lower() == "python" or _ckernel is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"

_impl = BACKENDS[BACKEND]
count_closed = _impl.count_closed
closed_masks = _impl.closed_masks
