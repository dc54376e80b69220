"""Kernel dispatch: compiled extension when built, pure Python otherwise.

The compiled kernels work in int64, so each wrapper proves the worst-case
intermediate magnitude fits before dispatching and otherwise falls back to the
big-int pure path.  Set UNILOCAL_PURE=1 to force the pure kernels.
"""

import os

from . import _pure

try:
    from . import _fast
except ImportError:
    _fast = None

if os.environ.get("UNILOCAL_PURE"):
    _fast = None

BACKEND = "cython" if _fast is not None else "pure"

_INT64_SAFE = 1 << 62


def mat_mul_w1(a, b, n, p, q, mod):
    if _fast is not None and p * mod * mod < _INT64_SAFE:
        return _fast.mat_mul_w1(a, b, n, p, q, mod)
    return _pure.mat_mul_w1(a, b, n, p, q, mod)


def mat_mul_w2(a, b, n, p, q, mod, c0, c1):
    if _fast is not None and p * mod * mod * (2 + c0 + c1) < _INT64_SAFE:
        return _fast.mat_mul_w2(a, b, n, p, q, mod, c0, c1)
    return _pure.mat_mul_w2(a, b, n, p, q, mod, c0, c1)


def cyc_mat_mul(a, b, n, p, q, prime, power):
    if _fast is not None:
        ma = max(map(abs, a), default=0)
        mb = max(map(abs, b), default=0)
        deg = power * (prime - 1)
        if ma * mb * p * deg * prime < _INT64_SAFE:
            return _fast.cyc_mat_mul(a, b, n, p, q, prime, power)
    return _pure.cyc_mat_mul(a, b, n, p, q, prime, power)
