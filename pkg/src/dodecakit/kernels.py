"""Kernel selection: the compiled extension when it was built, otherwise the
pure-Python reference.  Set DODECAKIT_PURE_PYTHON=1 to force the fallback."""

import os

from . import _kernels_py

IMPLEMENTATION = "python"

if os.environ.get("DODECAKIT_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _impl

        IMPLEMENTATION = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

canonical_code = _impl.canonical_code
