"""Backend selection for the bitmask kernels.

The compiled Cython backend (`roughmap._ckernels`) is used when it was
built and the operands fit in machine words; otherwise the pure-Python
reference (`roughmap._kernels_py`) takes over.  Set ROUGHMAP_PURE_PYTHON=1
to force the pure backend regardless.
"""

import os

from . import _kernels_py

REFLEXIVE = _kernels_py.REFLEXIVE
SYMMETRIC = _kernels_py.SYMMETRIC
TRANSITIVE = _kernels_py.TRANSITIVE
EQUIVALENCE = _kernels_py.EQUIVALENCE

# compiled backend masks are 64-bit words
MASK_BITS = 64

if os.environ.get("ROUGHMAP_PURE_PYTHON"):
    _ckernels = None
else:
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None

BACKEND = "c" if _ckernels is not None else "python"


def select(n: int, m: int | None = None):
    """Kernel module to use for a universe of size n (codomain size m)."""
    if _ckernels is None or n > MASK_BITS or (m is not None and m > MASK_BITS):
        return _kernels_py
    return _ckernels


def backends() -> dict:
    """Importable backends keyed by name (for benchmarks and tests)."""
    out = {"python": _kernels_py}
    if _ckernels is not None:
        out["c"] = _ckernels
    return out
