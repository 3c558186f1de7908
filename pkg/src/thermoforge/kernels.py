"""Kernel backend selection.

The compiled extension is used when it imports cleanly; otherwise the numpy
fallback is used. Set ``THERMOFORGE_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels as python_backend

try:
    if os.environ.get("THERMOFORGE_PURE", "") not in ("", "0"):
        raise ImportError("pure backend requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend

BACKEND = _active.BACKEND
renyi_logsum_grid = _active.renyi_logsum_grid
lorenz_margin = _active.lorenz_margin
simplex_phase1 = _active.simplex_phase1


def available_backends():
    """Return the importable backend modules, fallback first."""
    out = [python_backend]
    if compiled_backend is not None:
        out.append(compiled_backend)
    return out
