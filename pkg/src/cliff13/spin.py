"""Spin group elements, their adjoint action and induced Lorentz matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import jets
from .algebra import E, GRADE, ONE, Multivector, mv_exp
from .errors import DomainError, InvalidGeneratorError, OutsideDomainError, RepresentationError

EPS_SPIN = 1e-10
N_MAX = 200
ETA = np.diag([1.0, -1.0, -1.0, -1.0])

_GRADE2 = GRADE == 2


@dataclass(frozen=True)
class SpinElement:
    """An even form with ``S* S = 1``; ``S^{-1}`` is taken as ``S*``."""

    value: Multivector

    @classmethod
    def checked(cls, S: Multivector, tol=EPS_SPIN) -> "SpinElement":
        ok, res = is_spin(S, tol)
        if not ok:
            raise DomainError(f"not a Spin element: {res}", residual=res)
        return cls(S)

    @property
    def inverse(self) -> Multivector:
        return self.value.star()


def _require_grade2(U: Multivector, tol=0.0):
    c = U.coeffs
    off = np.abs(c[~_GRADE2]).max()
    if off > tol * max(1.0, np.abs(c).max()):
        raise InvalidGeneratorError(f"generator has non-grade-2 part of size {off:.3g}", residual=off)


def exp_series(U: Multivector, tol: float = 1e-16, n_max: int = N_MAX) -> SpinElement:
    """``exp(U)`` by its power series for a 2-form ``U``."""
    _require_grade2(U)
    return SpinElement(mv_exp(U, tol=tol, n_max=n_max))


def _pmul(a, b):
    return jets.mul(a, b) if np.ndim(a) else a * b


def lambda_poly(U: Multivector):
    """The degree-4 normalizer of the exterior exponent (scalar or jet)."""
    c = U.coeffs
    u01, u02, u03, u12, u13, u23 = (c[m] for m in (0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100))
    m = _pmul
    lam = (
        -m(u01, u01) - m(u02, u02) - m(u03, u03) + m(u12, u12)
        - m(m(u03, u03), m(u12, u12)) + 2 * m(m(u02, u03), m(u12, u13))
        + m(u13, u13) - m(m(u02, u02), m(u13, u13))
        - 2 * m(m(u01, u03), m(u12, u23))
        + 2 * m(m(u01, u02), m(u13, u23)) + m(u23, u23)
        - m(m(u01, u01), m(u23, u23))
    )
    if np.ndim(lam):
        lam = lam.copy()
        lam[0] += 1
        return lam
    return 1 + lam


def exterior_exp(U: Multivector) -> SpinElement:
    """``(1 + U + U^U/2) / sqrt(lambda)``; needs ``lambda > 0``."""
    _require_grade2(U)
    lam = lambda_poly(U)
    lam0 = complex(jets.value(lam) if np.ndim(lam) else lam)
    if abs(lam0.imag) > EPS_SPIN or lam0.real <= 0:
        raise OutsideDomainError(lam0.real if abs(lam0.imag) <= EPS_SPIN else lam0)
    body = ONE + U + 0.5 * U.wedge(U)
    if np.ndim(lam):
        return SpinElement(body.scale(jets.power(lam.real, -0.5)))
    return SpinElement(body / np.sqrt(lam0.real))


def is_spin(S: Multivector, tol: float = EPS_SPIN):
    """Membership test; returns ``(ok, {"odd": ..., "unit": ...})``."""
    S = S.value() if isinstance(S, Multivector) else S.value.value()
    odd = S.odd().norm()
    unit = (S.star() * S - ONE).norm()
    return bool(odd < tol and unit < tol), {"odd": odd, "unit": unit}


def _unwrap(S):
    return S.value if isinstance(S, SpinElement) else S


def adjoint(S, U: Multivector) -> Multivector:
    """``S^{-1} U S`` with ``S^{-1} = S*``."""
    S = _unwrap(S)
    return S.star() * U * S


def lorentz_matrix(S, tol: float = EPS_SPIN) -> np.ndarray:
    """Real matrix ``p[a, b]`` with ``S^{-1} e^a S = p^a_b e^b``."""
    S = _unwrap(S).value()
    P = np.zeros((4, 4))
    for a in range(4):
        img = adjoint(S, E[a]).coeffs
        leak = max(np.abs(np.delete(img, [1, 2, 4, 8])).max(), np.abs(img[[1, 2, 4, 8]].imag).max())
        if leak > tol:
            raise RepresentationError(f"adjoint image of e^{a} leaves the real 1-forms by {leak:.3g}")
        P[a] = img[[1, 2, 4, 8]].real
    return P


def lorentz_residuals(P: np.ndarray) -> dict:
    """Deviations from ``P^T eta P = eta``, ``det P = 1`` and the sign of ``p^0_0``."""
    return {
        "metric": float(np.abs(P.T @ ETA @ P - ETA).max()),
        "det": float(abs(np.linalg.det(P) - 1.0)),
        "p00": float(P[0, 0]),
    }


def lorentz_field(S: Multivector) -> np.ndarray:
    """Jet-valued ``p^a_b(x)`` for a jet-valued Spin field (shape (4, 4, M))."""
    if not S.is_jet:
        raise ValueError("expected a jet-valued Spin field")
    Sst = S.star()
    return np.stack([(Sst * E[a] * S).coeffs[[1, 2, 4, 8]] for a in range(4)]).real
