"""Backend selection for the reduction kernels.

The compiled extension is used when importable; setting the environment
variable ``PHDIM_PURE_PYTHON=1`` forces the pure-Python mirror.
"""

import os

from . import _pykernels

if os.environ.get("PHDIM_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "compiled"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

union_find_pairs = _impl.union_find_pairs
cohomology_pairs = _impl.cohomology_pairs

__all__ = ["BACKEND", "union_find_pairs", "cohomology_pairs"]
