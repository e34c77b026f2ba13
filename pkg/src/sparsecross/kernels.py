"""Backend selection for the hot kernels.

The compiled extension (``sparsecross._core``) is preferred when available;
otherwise the numpy/Python fallback is used.  Set ``SPARSECROSS_BACKEND`` to
``compiled`` or ``python`` to force a choice (forcing ``compiled`` raises if
the extension is missing).
"""

from __future__ import annotations

import os

from . import _fallback

_requested = os.environ.get("SPARSECROSS_BACKEND", "auto").lower()

if _requested == "python":
    _impl = _fallback
elif _requested == "compiled":
    from . import _core as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND_NAME

enumerate_weighted_indexes = _impl.enumerate_weighted_indexes
csr_matvec = _impl.csr_matvec
level_sums_pth_power = _impl.level_sums_pth_power


def available_backends():
    """Names of importable kernel backends."""
    names = ["python"]
    try:
        from . import _core  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return names
