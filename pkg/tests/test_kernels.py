import numpy as np
import pytest

from cliff13 import _kernels_py, jets, kernels
from cliff13.kernels import CENTRAL_SIGN, WEDGE_SIGN, product, reorder_sign

ck = pytest.importorskip("cliff13._ckernels")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_sign_tables_against_bit_oracle():
    # wedge of disjoint blades = sign of the permutation sorting the concatenated indices
    for a in range(16):
        for b in range(16):
            ia = [i for i in range(4) if a >> i & 1]
            ib = [i for i in range(4) if b >> i & 1]
            seq = ia + ib
            inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
            assert reorder_sign(a, b) == (-1) ** inv
            assert WEDGE_SIGN[a, b] == (0 if a & b else (-1) ** inv)
            metric = np.prod([(1, -1, -1, -1)[i] for i in set(ia) & set(ib)])
            assert CENTRAL_SIGN[a, b] == (-1) ** inv * metric


@pytest.mark.parametrize("order", [None, 0, 1, 2, 3])
@pytest.mark.parametrize("sign", [CENTRAL_SIGN, WEDGE_SIGN])
def test_backends_agree(order, sign):
    rng = np.random.default_rng(order or 0)
    shape = (16,) if order is None else (16, jets.size(order))
    A = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    Bm = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    p = product(A, Bm, sign, _kernels_py)
    c = product(A, Bm, sign, ck)
    assert np.allclose(p, c, rtol=1e-14, atol=1e-13)


def test_point_product_reference():
    rng = np.random.default_rng(3)
    A = rng.normal(size=16) + 1j * rng.normal(size=16)
    Bm = rng.normal(size=16) + 1j * rng.normal(size=16)
    ref = np.zeros(16, complex)
    for a in range(16):
        for b in range(16):
            ref[a ^ b] += CENTRAL_SIGN[a, b] * A[a] * Bm[b]
    assert np.allclose(product(A, Bm), ref)


def test_jet_product_is_leibniz():
    # d(AB) = dA B + A dB on the first-order slots
    rng = np.random.default_rng(4)
    m = jets.size(1)
    A = rng.normal(size=(16, m)) + 0j
    Bm = rng.normal(size=(16, m)) + 0j
    P = product(A, Bm)
    for mu in range(4):
        lhs = jets.value(jets.deriv(P, mu))
        rhs = product(jets.value(jets.deriv(A, mu)), A[:, 0] * 0 + Bm[:, 0]) + product(A[:, 0], jets.value(jets.deriv(Bm, mu)))
        assert np.allclose(lhs, rhs)


def test_mismatched_jet_sizes():
    with pytest.raises(ValueError):
        product(np.zeros((16, 5)), np.zeros((16, 15)))
