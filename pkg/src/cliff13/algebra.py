"""The 16-dimensional complexified algebra of differential forms at a point.

Elements are stored in the orthonormal tetrad basis: ``coeffs[mask]`` is the
coefficient of the blade whose generators are the set bits of ``mask``
(``0b0101`` is e^{02}).  A trailing axis, when present, holds Taylor-jet
coefficients (see :mod:`cliff13.jets`) so the same arithmetic serves point
values and fields with exact derivatives.
"""
from __future__ import annotations

from numbers import Number

import numpy as np

from . import jets
from .errors import ConvergenceError, InvalidGradeError
from .kernels import CENTRAL_SIGN, METRIC, WEDGE_SIGN, product

EPS_ALG = 1e-12

GRADE = np.array([bin(m).count("1") for m in range(16)])
STAR_SIGN = np.array([(-1) ** (g * (g - 1) // 2) for g in GRADE])
EVEN = GRADE % 2 == 0
BLADE_LABELS = tuple("".join(str(i) for i in range(4) if m >> i & 1) for m in range(16))
_LABEL_TO_MASK = {lab: m for m, lab in enumerate(BLADE_LABELS)}


def blade_mask(label) -> int:
    """Mask of a blade given as ``"013"``, ``(0, 1, 3)`` or an int mask."""
    if isinstance(label, (int, np.integer)):
        if not 0 <= label < 16:
            raise ValueError(f"blade mask out of range: {label}")
        return int(label)
    if isinstance(label, str):
        key = "".join(sorted(label))
        if key not in _LABEL_TO_MASK or len(set(label)) != len(label):
            raise ValueError(f"bad blade label {label!r}")
        return _LABEL_TO_MASK[key]
    mask = 0
    for i in label:
        mask |= 1 << int(i)
    return mask


class Multivector:
    """Immutable element of the complexified algebra (optionally jet-valued)."""

    __slots__ = ("coeffs",)
    __array_priority__ = 100

    def __init__(self, coeffs):
        arr = np.array(coeffs, dtype=np.complex128)
        if arr.ndim not in (1, 2) or arr.shape[0] != 16:
            raise ValueError(f"expected shape (16,) or (16, M), got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    # construction
    @classmethod
    def zero(cls, order=None):
        shape = (16,) if order is None else (16, jets.size(order))
        return cls(np.zeros(shape))

    @classmethod
    def scalar(cls, c=1.0, order=None):
        out = np.zeros(16, dtype=np.complex128) if order is None else None
        if order is None:
            out[0] = c
            return cls(out)
        out = np.zeros((16, jets.size(order)), dtype=np.complex128)
        out[0] = c if np.ndim(c) else jets.constant(c, order)
        return cls(out)

    @classmethod
    def blade(cls, label, coeff=1.0):
        out = np.zeros(16, dtype=np.complex128)
        out[blade_mask(label)] = coeff
        return cls(out)

    @classmethod
    def from_dict(cls, terms):
        out = np.zeros(16, dtype=np.complex128)
        for label, c in terms.items():
            out[blade_mask(label)] += c
        return cls(out)

    @classmethod
    def from_json(cls, obj):
        """Inverse of :meth:`to_json`: ``{"01": [re, im], ...}``."""
        out = np.zeros(16, dtype=np.complex128)
        for label, pair in obj.items():
            if isinstance(pair, (list, tuple)):
                re, im = pair
            else:
                re, im = pair, 0.0
            out[blade_mask(label)] += complex(re, im)
        return cls(out)

    # inspection
    @property
    def is_jet(self) -> bool:
        return self.coeffs.ndim == 2

    @property
    def jet_order(self):
        return jets.order_of(self.coeffs) if self.is_jet else None

    def value(self) -> "Multivector":
        """Point value (drops derivative information)."""
        return Multivector(self.coeffs[:, 0]) if self.is_jet else self

    def norm(self) -> float:
        """Max-norm over all stored coefficients."""
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0

    def grades(self, tol=0.0):
        vals = self.coeffs if not self.is_jet else np.max(np.abs(self.coeffs), axis=1)
        return sorted({int(GRADE[m]) for m in range(16) if abs(vals[m]) > tol})

    def to_dict(self, tol=0.0):
        return {BLADE_LABELS[m]: complex(c) for m, c in enumerate(self.value().coeffs) if abs(c) > tol}

    def to_json(self):
        return {BLADE_LABELS[m]: [float(c.real) + 0.0, float(c.imag) + 0.0] for m, c in enumerate(self.value().coeffs)}

    def __repr__(self):
        v = self.value().coeffs
        terms = [f"({c.real:.6g}{c.imag:+.6g}j)e{BLADE_LABELS[m] or '_'}" for m, c in enumerate(v) if c != 0]
        tag = f", jet order {self.jet_order}" if self.is_jet else ""
        return f"Multivector({' + '.join(terms) or '0'}{tag})"

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Multivector):
            a, b = self.coeffs, other.coeffs
        elif isinstance(other, Number) or np.ndim(other) == 0:
            b = np.zeros_like(self.coeffs)
            b[0] = other if not self.is_jet else jets.promote(other, self.coeffs.shape[1])
            a = self.coeffs
        else:
            return NotImplemented
        if a.ndim != b.ndim:
            m = a.shape[1] if a.ndim == 2 else b.shape[1]
            a = jets.promote(a, m) if a.ndim == 1 else a
            b = jets.promote(b, m) if b.ndim == 1 else b
        return a, b

    def __add__(self, other):
        ab = self._coerce(other)
        if ab is NotImplemented:
            return NotImplemented
        return Multivector(ab[0] + ab[1])

    __radd__ = __add__

    def __sub__(self, other):
        ab = self._coerce(other)
        if ab is NotImplemented:
            return NotImplemented
        return Multivector(ab[0] - ab[1])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Multivector(-self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return Multivector(product(self.coeffs, other.coeffs))
        if isinstance(other, Number) or np.ndim(other) == 0:
            return Multivector(self.coeffs * other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Number) or np.ndim(other) == 0:
            return Multivector(self.coeffs * other)
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Number) or np.ndim(other) == 0:
            return Multivector(self.coeffs / other)
        return self.scale(jets.reciprocal(other))

    def __xor__(self, other):
        return self.wedge(other)

    def scale(self, s):
        """Multiply by a scalar jet (array of jet coefficients)."""
        s = np.asarray(s)
        c = self.coeffs if self.is_jet else jets.promote(self.coeffs, s.shape[-1])
        return Multivector(jets.mul(c, s[None, :]))

    def wedge(self, other):
        return Multivector(product(self.coeffs, other.coeffs, WEDGE_SIGN))

    def grade(self, k: int):
        if k not in (0, 1, 2, 3, 4):
            raise InvalidGradeError(f"grade must be 0..4, got {k!r}")
        mask = (GRADE == k)[:, None] if self.is_jet else GRADE == k
        return Multivector(self.coeffs * mask)

    def even(self):
        return Multivector(self.coeffs * (EVEN[:, None] if self.is_jet else EVEN))

    def odd(self):
        return Multivector(self.coeffs * (~EVEN[:, None] if self.is_jet else ~EVEN))

    def conj(self):
        return Multivector(np.conj(self.coeffs))

    def star(self):
        s = STAR_SIGN[:, None] if self.is_jet else STAR_SIGN
        return Multivector(s * np.conj(self.coeffs))

    def dagger(self):
        return H * self.star() * H

    def trace(self):
        return self.coeffs[0]

    def d(self, mu: int):
        """Coefficient-wise partial derivative (jet-valued only)."""
        if not self.is_jet:
            raise ValueError("derivative needs a jet-valued multivector")
        return Multivector(jets.deriv(self.coeffs, mu))


def isclose(U, V, tol=EPS_ALG) -> bool:
    """Max-norm comparison relative to the larger operand (at least 1)."""
    U = U if isinstance(U, Multivector) else Multivector.scalar(U)
    V = V if isinstance(V, Multivector) else Multivector.scalar(V)
    scale = max(1.0, U.norm(), V.norm())
    return (U - V).norm() <= tol * scale


ONE = Multivector.scalar(1.0)
E = tuple(Multivector.blade(1 << a) for a in range(4))
E_LOWER = tuple(METRIC[a] * E[a] for a in range(4))
H = E[0]
I_UNIT = Multivector.scalar(1j)


def wedge(U: Multivector, V: Multivector) -> Multivector:
    return U.wedge(V)


def central_product(U: Multivector, V: Multivector) -> Multivector:
    return U * V


def commutator(U: Multivector, V: Multivector) -> Multivector:
    return U * V - V * U


def grade_project(U: Multivector, k: int) -> Multivector:
    return U.grade(k)


def star_conj(U: Multivector) -> Multivector:
    return U.star()


def hermitian_conj(U: Multivector) -> Multivector:
    return U.dagger()


def trace(U: Multivector):
    return U.trace()


def scalar_product(U: Multivector, V: Multivector):
    """``Tr(U^dagger V)``: conjugate-linear in the first slot."""
    return (U.dagger() * V).trace()


def anti_hermitian_basis():
    """The 16 forms i, ie^0, e^1, ..., ie^{123}, e^{0123} in the printed order."""
    spec = [
        ("", 1j), ("0", 1j), ("1", 1), ("2", 1), ("3", 1),
        ("01", 1j), ("02", 1j), ("03", 1j), ("12", 1), ("13", 1), ("23", 1),
        ("012", 1), ("013", 1), ("023", 1), ("123", 1j), ("0123", 1),
    ]
    return tuple(Multivector.blade(lab, c) for lab, c in spec)


def contract_generators(U: Multivector) -> Multivector:
    """``sum_a e^a U e_a``; scales grade k by 4, -2, 0, 2, -4."""
    total = E[0] * U * E_LOWER[0]
    for a in range(1, 4):
        total = total + E[a] * U * E_LOWER[a]
    return total


def mv_exp(U: Multivector, tol=1e-16, n_max=200) -> Multivector:
    """Power series ``1 + sum U^k / k!`` with term-norm stopping."""
    order = U.jet_order
    term = Multivector.scalar(1.0, order)
    total = term
    for n in range(1, n_max + 1):
        term = term * U / n
        total = total + term
        if term.norm() < tol * max(1.0, total.norm()):
            return total
    raise ConvergenceError(f"exponential series did not converge in {n_max} terms")
