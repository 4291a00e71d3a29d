"""Blade sign tables and the product kernels, with backend selection.

The compiled extension is preferred; set ``CLIFF13_PURE=1`` to force the
numpy fallback.
"""
import os

import numpy as np

from . import _kernels_py
from . import jets

METRIC = (1, -1, -1, -1)


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the generators of blade ``a`` followed by blade ``b``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _central_sign(a: int, b: int) -> int:
    s = reorder_sign(a, b)
    common = a & b
    for i in range(4):
        if common >> i & 1:
            s *= METRIC[i]
    return s


CENTRAL_SIGN = np.array([[_central_sign(a, b) for b in range(16)] for a in range(16)], dtype=np.int8)
WEDGE_SIGN = np.array(
    [[reorder_sign(a, b) if a & b == 0 else 0 for b in range(16)] for a in range(16)], dtype=np.int8
)

_pure = os.environ.get("CLIFF13_PURE", "").strip() not in ("", "0")
try:
    if _pure:
        raise ImportError("pure backend requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _kernels_py
    BACKEND = "python"


def product(A, B, sign=CENTRAL_SIGN, impl=None):
    """Blade-table product of coefficient arrays of shape (16,) or (16, M)."""
    impl = impl or _impl
    A = np.ascontiguousarray(A, dtype=np.complex128)
    B = np.ascontiguousarray(B, dtype=np.complex128)
    if A.ndim == 1 and B.ndim == 1:
        return impl.blade_product(A, B, sign)
    if A.ndim == 1:
        A = np.ascontiguousarray(jets.promote(A, B.shape[1]))
    if B.ndim == 1:
        B = np.ascontiguousarray(jets.promote(B, A.shape[1]))
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"jet sizes differ: {A.shape[1]} vs {B.shape[1]}")
    sp = jets.space_for_size(A.shape[1])
    return impl.blade_product_jet(A, B, sign, sp.ci, sp.cj, sp.ck, sp.conv)
