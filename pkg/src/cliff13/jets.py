"""Truncated Taylor jets in the four chart coordinates.

A jet of order N at a point x is the array of Taylor coefficients
``c[alpha] = d^alpha f(x) / alpha!`` over all multi-indices with
``|alpha| <= N``, stored on the last axis.  Products truncate at N, so a
quantity obtained after ``d`` differentiations is trustworthy to order
``N - d``; callers size N for the deepest derivative they need.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

import numpy as np

DIM = 4


@dataclass(frozen=True, eq=False)
class JetSpace:
    order: int
    exps: np.ndarray
    index: dict
    ci: np.ndarray
    cj: np.ndarray
    ck: np.ndarray
    conv: np.ndarray
    deriv_src: np.ndarray
    deriv_fac: np.ndarray

    @property
    def size(self) -> int:
        return len(self.exps)


def _monomials(order):
    out = []
    for deg in range(order + 1):
        for a in range(deg, -1, -1):
            for b in range(deg - a, -1, -1):
                for c in range(deg - a - b, -1, -1):
                    out.append((a, b, c, deg - a - b - c))
    return out


@lru_cache(maxsize=None)
def space(order: int) -> JetSpace:
    if order < 0:
        raise ValueError("jet order must be non-negative")
    mons = _monomials(order)
    index = {m: i for i, m in enumerate(mons)}
    exps = np.array(mons, dtype=np.int64)
    ci, cj, ck = [], [], []
    for i, mi in enumerate(mons):
        for j, mj in enumerate(mons):
            if sum(mi) + sum(mj) <= order:
                ci.append(i)
                cj.append(j)
                ck.append(index[tuple(p + q for p, q in zip(mi, mj))])
    m = len(mons)
    conv = np.zeros((len(ck), m))
    conv[np.arange(len(ck)), ck] = 1.0
    src = np.zeros((DIM, m), dtype=np.int64)
    fac = np.zeros((DIM, m))
    for mu in range(DIM):
        for k, mono in enumerate(mons):
            up = list(mono)
            up[mu] += 1
            up = tuple(up)
            if up in index:
                src[mu, k] = index[up]
                fac[mu, k] = up[mu]
    for arr in (exps, src, fac, conv):
        arr.flags.writeable = False
    return JetSpace(
        order, exps, index,
        np.array(ci, dtype=np.int_), np.array(cj, dtype=np.int_), np.array(ck, dtype=np.int_),
        conv, src, fac,
    )


_SIZES = {}


def size(order: int) -> int:
    return space(order).size


def space_for_size(m: int) -> JetSpace:
    if m not in _SIZES:
        order = 0
        while size(order) < m:
            order += 1
        if size(order) != m:
            raise ValueError(f"{m} is not a jet size")
        _SIZES[m] = space(order)
    return _SIZES[m]


def order_of(a) -> int:
    return space_for_size(np.shape(a)[-1]).order


def promote(values, m: int):
    """Embed plain values as constant jets of size ``m``."""
    values = np.asarray(values)
    out = np.zeros(values.shape + (m,), dtype=np.result_type(values, float))
    out[..., 0] = values
    return out


def constant(value, order: int):
    return promote(value, size(order))


def variable(x, mu: int, order: int):
    """Jet of the coordinate function ``x^mu`` at the point ``x``."""
    sp = space(order)
    out = np.zeros(sp.size)
    out[0] = x[mu]
    if order >= 1:
        e = [0, 0, 0, 0]
        e[mu] = 1
        out[sp.index[tuple(e)]] = 1.0
    return out


def mul(a, b):
    """Truncated product, broadcasting over leading axes."""
    a = np.asarray(a)
    b = np.asarray(b)
    sp = space_for_size(a.shape[-1])
    return (a[..., sp.ci] * b[..., sp.cj]) @ sp.conv


def einsum(spec: str, a, b):
    """Two-operand einsum over leading axes with jet multiplication.

    ``spec`` is written without the jet axis, e.g. ``"ij,jk->ik"``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    sp = space_for_size(a.shape[-1])
    lhs, out = spec.split("->")
    la, lb = lhs.split(",")
    pa = a[..., sp.ci]
    pb = b[..., sp.cj]
    return np.einsum(f"{la}Z,{lb}Z->{out}Z", pa, pb) @ sp.conv


def apply_slot(mat, t, axis: int):
    """``out[.., x, ..] = sum_a mat[x, a] t[.., a, ..]`` on slot ``axis`` (jets)."""
    mat = np.asarray(mat)
    t = np.asarray(t)
    sp = space_for_size(t.shape[-1])
    pm = np.moveaxis(mat[..., sp.ci], -1, 0)  # (P, X, A)
    pt = np.moveaxis(np.moveaxis(t[..., sp.cj], axis, 0), -1, 0)  # (P, A, rest...)
    shape = pt.shape
    prod = pm @ pt.reshape(shape[0], shape[1], -1)  # (P, X, rest)
    prod = np.moveaxis(prod.reshape((shape[0], mat.shape[0]) + shape[2:]), 0, -1)
    return np.moveaxis(prod, 0, axis) @ sp.conv


def deriv(a, mu: int):
    """Partial derivative along chart coordinate ``mu`` (loses one order)."""
    a = np.asarray(a)
    sp = space_for_size(a.shape[-1])
    return a[..., sp.deriv_src[mu]] * sp.deriv_fac[mu]


def value(a):
    return np.asarray(a)[..., 0]


def gradient(a):
    a = np.asarray(a)
    sp = space_for_size(a.shape[-1])
    idx = [sp.index[tuple(int(i == mu) for i in range(DIM))] for mu in range(DIM)]
    return np.moveaxis(a[..., idx], -1, 0)


def hessian(a):
    a = np.asarray(a)
    sp = space_for_size(a.shape[-1])
    out = np.zeros((DIM, DIM) + a.shape[:-1], dtype=a.dtype)
    for i in range(DIM):
        for j in range(DIM):
            e = [0] * DIM
            e[i] += 1
            e[j] += 1
            out[i, j] = a[..., sp.index[tuple(e)]] * (2.0 if i == j else 1.0)
    return out


def compose(a, taylor):
    """Evaluate ``g(a)`` given ``taylor[n] = g^(n)(a0) / n!`` for n = 0..N."""
    a = np.asarray(a)
    order = order_of(a)
    h = a.copy()
    h[..., 0] = 0
    out = promote(np.asarray(taylor[order]), a.shape[-1])
    for n in range(order - 1, -1, -1):
        out = mul(h, out)
        out[..., 0] += taylor[n]
    return out


def exp(a):
    a = np.asarray(a)
    e0 = np.exp(value(a))
    return compose(a, [e0 / factorial(n) for n in range(order_of(a) + 1)])


def sin(a):
    a = np.asarray(a)
    v = value(a)
    cyc = [np.sin(v), np.cos(v), -np.sin(v), -np.cos(v)]
    return compose(a, [cyc[n % 4] / factorial(n) for n in range(order_of(a) + 1)])


def cos(a):
    a = np.asarray(a)
    v = value(a)
    cyc = [np.cos(v), -np.sin(v), -np.cos(v), np.sin(v)]
    return compose(a, [cyc[n % 4] / factorial(n) for n in range(order_of(a) + 1)])


def power(a, p: float):
    """Real power ``a**p``; the base value must be nonzero (positive unless p is integral)."""
    a = np.asarray(a)
    v = value(a)
    coeffs = []
    c = 1.0
    for n in range(order_of(a) + 1):
        coeffs.append(c * v ** (p - n))
        c = c * (p - n) / (n + 1)
    return compose(a, coeffs)


def sqrt(a):
    return power(a, 0.5)


def reciprocal(a):
    return power(a, -1.0)


def inv_matrix(a):
    """Inverse of a jet-valued square matrix of shape (n, n, M)."""
    a = np.asarray(a)
    n = a.shape[0]
    m = a.shape[-1]
    base_inv = np.linalg.inv(value(a))
    h = a.copy()
    h[..., 0] = 0
    x = -einsum("ij,jk->ik", promote(base_inv, m), h)
    term = promote(np.eye(n, dtype=base_inv.dtype), m)
    total = term.copy()
    for _ in range(order_of(a)):
        term = einsum("ij,jk->ik", x, term)
        total = total + term
    return einsum("ij,jk->ik", total, promote(base_inv, m))


def _perm_parity(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def det(a):
    """Determinant of a jet-valued (n, n, M) matrix by the Leibniz formula."""
    a = np.asarray(a)
    n = a.shape[0]
    total = np.zeros(a.shape[-1], dtype=a.dtype)
    for p in permutations(range(n)):
        term = a[0, p[0]]
        for i in range(1, n):
            term = mul(term, a[i, p[i]])
        total = total + _perm_parity(p) * term
    return total


def truncate(a, order: int):
    """Drop monomials above ``order`` (monomials are stored by degree)."""
    return np.asarray(a)[..., : size(order)]
