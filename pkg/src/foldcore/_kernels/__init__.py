"""Hot inner loops for the quadratic core, with backend selection at import.

The compiled Cython extension is used when it is built and importable; the
pure-Python fallback (same semantics, bitwise-identical results) is used
otherwise.  Set FOLDCORE_PURE_PYTHON=1 to force the fallback, e.g. for
benchmark comparisons.
"""

import os

from . import fallback

if os.environ.get("FOLDCORE_PURE_PYTHON"):
    _impl = fallback
    BACKEND = "python"
else:
    try:
        from . import _quad as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = fallback
        BACKEND = "python"

STATUS_OK = _impl.STATUS_OK
STATUS_OVERFLOW = _impl.STATUS_OVERFLOW
STATUS_DEGENERATE = _impl.STATUS_DEGENERATE

quad_orbit = _impl.quad_orbit
quad_lyapunov = _impl.quad_lyapunov
quad_sweep = _impl.quad_sweep
quad_pair_sep = _impl.quad_pair_sep

__all__ = [
    "BACKEND",
    "STATUS_OK",
    "STATUS_OVERFLOW",
    "STATUS_DEGENERATE",
    "quad_orbit",
    "quad_lyapunov",
    "quad_sweep",
    "quad_pair_sep",
]
