"""Kernel backend selection.

The compiled extension is preferred. Set ``DATATENSOR_PURE_PYTHON=1`` to
force the pure-Python fallback.
"""

import os

from . import _pykernels

if os.environ.get("DATATENSOR_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

int_binary = _impl.int_binary
int_reduce = _impl.int_reduce
similarity = _impl.similarity
float_pow = _impl.float_pow

ADD, MINUS, MUL, MIN, MAX = (
    _pykernels.ADD, _pykernels.MINUS, _pykernels.MUL, _pykernels.MIN, _pykernels.MAX,
)
R_SUM, R_PROD, R_MIN, R_MAX = (
    _pykernels.R_SUM, _pykernels.R_PROD, _pykernels.R_MIN, _pykernels.R_MAX,
)
S_COSINE, S_EUCLIDEAN, S_MANHATTAN, S_DOT = (
    _pykernels.S_COSINE, _pykernels.S_EUCLIDEAN, _pykernels.S_MANHATTAN, _pykernels.S_DOT,
)
