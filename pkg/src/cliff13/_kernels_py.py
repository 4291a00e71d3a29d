"""Pure numpy implementation of the blade-product kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference the extension is checked against.
"""
import numpy as np

_XOR = np.bitwise_xor.outer(np.arange(16), np.arange(16))


def blade_product(A, B, sign):
    """Plain product of two length-16 coefficient vectors.

    ``sign[a, b]`` is the integer factor of blade ``a`` times blade ``b``
    (0 where the product vanishes); the result lands on blade ``a ^ b``.
    """
    # row a, column c holds sign[a, a^c] * B[a^c]
    bp = np.take_along_axis(sign, _XOR, axis=1) * B[_XOR]
    return A @ bp


def blade_product_jet(A, B, sign, ci, cj, ck, conv):
    """Product of two (16, M) Taylor-jet coefficient arrays.

    ``ci``/``cj`` enumerate the monomial pairs that survive truncation,
    ``ck`` is the product monomial of each pair and ``conv`` (P, M) is the
    same scatter as a 0/1 matrix.
    """
    s = np.take_along_axis(sign, _XOR, axis=1)
    bp = s[:, :, None] * B[_XOR][:, :, cj]
    t = np.einsum("ap,acp->cp", A[:, ci], bp)
    return t @ conv
