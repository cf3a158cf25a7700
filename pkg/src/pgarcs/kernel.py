"""Backend selection for the coverage kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback.  Set ``PGARCS_BACKEND=python`` to force the fallback.
"""
import os

from . import _pykernel

if os.environ.get("PGARCS_BACKEND", "").lower() == "python":
    _impl = _pykernel
else:
    try:
        from . import _ckernel as _impl
    except ImportError:  # extension not built
        _impl = _pykernel

BACKEND = _impl.BACKEND
add_point = _impl.add_point
first_uncovered = _impl.first_uncovered
singer_sequence = _impl.singer_sequence


def available_backends():
    """Map backend name -> kernel module for every importable backend."""
    out = {"python": _pykernel}
    try:
        from . import _ckernel
    except ImportError:
        pass
    else:
        out["cython"] = _ckernel
    return out
