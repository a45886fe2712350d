"""Hot-kernel backend selection.

The compiled extension is preferred; the pure-Python twin is used when
the extension is missing or when the environment variable
UCLEARN_PURE_PYTHON is set to a non-empty value.  Both expose the same
functions with identical semantics and random-stream consumption.
"""

import os

from . import _hnr_py

if os.environ.get("UCLEARN_PURE_PYTHON"):
    backend = _hnr_py
else:
    try:
        from . import _hnr as backend  # type: ignore[no-redef]
    except ImportError:
        backend = _hnr_py

BACKEND_NAME = backend.NAME

ellipsoid_chain = backend.ellipsoid_chain
ct_chain_dubins = backend.ct_chain_dubins


def available_backends():
    """Importable backend modules keyed by name (for benchmarks/tests)."""
    out = {_hnr_py.NAME: _hnr_py}
    try:
        from . import _hnr

        out[_hnr.NAME] = _hnr
    except ImportError:
        pass
    return out
