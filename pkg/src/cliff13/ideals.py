"""Idempotents, left-ideal bases and the Lie algebras L(t_(k)).

Index conventions follow the matrix-unit forms: ``Y[n][k]`` (0-based here)
is mapped by the k=1 representation to the elementary matrix with a single
1 in row n, column k.  Basis forms of the ideals are
``t_{4(n-1)+k} = 2 Y^k_n`` (1-based), so the first ``4k`` of them span
``I(t_(k))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import EPS_ALG, Multivector, anti_hermitian_basis, commutator, scalar_product
from .errors import DomainError, NonClosureError

_I = 1j

# verbatim table; rows are the upper index n, columns the lower index k
_Y_TERMS = {
    (1, 1): {"": 1, "0": 1, "012": _I, "12": _I},
    (1, 2): {"013": 1, "13": 1, "023": _I, "23": _I},
    (1, 3): {"03": 1, "3": 1, "0123": _I, "123": _I},
    (1, 4): {"01": 1, "1": 1, "02": _I, "2": _I},
    (2, 1): {"013": -1, "13": -1, "023": _I, "23": _I},
    (2, 2): {"": 1, "0": 1, "012": -_I, "12": -_I},
    (2, 3): {"01": 1, "1": 1, "02": -_I, "2": -_I},
    (2, 4): {"03": -1, "3": -1, "0123": _I, "123": _I},
    (3, 1): {"03": 1, "3": -1, "0123": _I, "123": -_I},
    (3, 2): {"01": 1, "1": -1, "02": _I, "2": -_I},
    (3, 3): {"": 1, "0": -1, "012": -_I, "12": _I},
    (3, 4): {"013": -1, "13": 1, "023": -_I, "23": _I},
    (4, 1): {"01": 1, "1": -1, "02": -_I, "2": _I},
    (4, 2): {"03": -1, "3": 1, "0123": _I, "123": -_I},
    (4, 3): {"013": 1, "13": -1, "023": -_I, "23": _I},
    (4, 4): {"": 1, "0": -1, "012": _I, "12": -_I},
}


@lru_cache(maxsize=None)
def matrix_unit_forms():
    """4x4 nested tuple ``Y[n][k]`` of the matrix-unit forms (0-based)."""
    return tuple(
        tuple(Multivector.from_dict({b: c / 4 for b, c in _Y_TERMS[n, k].items()}) for k in range(1, 5))
        for n in range(1, 5)
    )


def _check_k(k):
    if k not in (1, 2, 3, 4):
        raise ValueError(f"k must be 1, 2, 3 or 4, got {k!r}")


def primitive_idempotent(k: int) -> Multivector:
    """``t_(k) = Y^1_1 + ... + Y^k_k``."""
    _check_k(k)
    Y = matrix_unit_forms()
    t = Y[0][0]
    for n in range(1, k):
        t = t + Y[n][n]
    return t


def gell_mann_forms():
    """The eight forms whose k=1 images are the Gell-Mann matrices."""
    Y = matrix_unit_forms()
    y = lambda n, k: Y[n - 1][k - 1]
    return (
        y(1, 2) + y(2, 1),
        -1j * y(1, 2) + 1j * y(2, 1),
        y(1, 1) - y(2, 2),
        y(1, 3) + y(3, 1),
        -1j * y(1, 3) + 1j * y(3, 1),
        y(2, 3) + y(3, 2),
        -1j * y(2, 3) + 1j * y(3, 2),
        (y(1, 1) + y(2, 2) - 2 * y(3, 3)) / np.sqrt(3),
    )


def normalized_scalar_product(k: int, u: Multivector, v: Multivector):
    return 4.0 / k * scalar_product(u, v)


def commutant_membership(t: Multivector, U: Multivector, tol=EPS_ALG) -> dict:
    """Residual-based membership of U in K(t), K_0(t) and L(t)."""
    scale = max(1.0, U.norm())
    r_comm = commutator(U, t).norm() / scale
    r_ideal = (U * t - U).norm() / scale
    r_ah = (U.dagger() + U).norm() / scale
    in_k = r_comm <= tol
    in_k0 = in_k and r_ideal <= tol
    return {
        "in_K": bool(in_k),
        "in_K0": bool(in_k0),
        "in_L": bool(in_k0 and r_ah <= tol),
        "residuals": {"commutator": r_comm, "ideal": r_ideal, "anti_hermitian": r_ah},
    }


@dataclass(frozen=True, eq=False)
class LieBasis:
    """Generators of L(t_(k)) and their structure constants ``structure[m, n, l]``."""

    k: int
    taus: tuple
    structure: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.taus)

    def expand(self, U: Multivector) -> np.ndarray:
        """Real coefficients ``f_n`` with ``U = f_n tau_n`` (for U in L(t))."""
        return np.array([normalized_scalar_product(self.k, tau, U).real for tau in self.taus])

    def combine(self, f) -> Multivector:
        out = Multivector.zero()
        for fn, tau in zip(f, self.taus):
            out = out + fn * tau
        return out


def structure_constants(k: int, taus, tol=EPS_ALG) -> np.ndarray:
    """``c[m, n, l] = Re (tau^m, [tau_n, tau_l])_(k)`` with imaginary-part and closure checks."""
    n_gen = len(taus)
    c = np.zeros((n_gen, n_gen, n_gen))
    for n in range(n_gen):
        for l in range(n_gen):
            br = commutator(taus[n], taus[l])
            coords = np.array([normalized_scalar_product(k, tm, br) for tm in taus])
            if np.abs(coords.imag).max() > tol:
                raise NonClosureError(f"complex structure constant in [tau_{n}, tau_{l}]", np.abs(coords.imag).max())
            c[:, n, l] = coords.real
            rest = br
            for m in range(n_gen):
                rest = rest - coords[m].real * taus[m]
            if rest.norm() > tol * max(1.0, br.norm()):
                raise NonClosureError(f"[tau_{n}, tau_{l}] leaves the generator span", rest.norm())
    return c


@lru_cache(maxsize=None)
def lie_generators(k: int) -> LieBasis:
    _check_k(k)
    t = primitive_idempotent(k)
    if k == 1:
        taus = (1j * t,)
    elif k == 2:
        taus = (1j * t,) + tuple(1j * lam for lam in gell_mann_forms()[:3])
    elif k == 3:
        s = 1j * np.sqrt(1.5)
        taus = (1j * t,) + tuple(s * lam for lam in gell_mann_forms())
    else:
        taus = anti_hermitian_basis()
    return LieBasis(k, taus, structure_constants(k, taus))


def traceless_projection(k: int, U: Multivector) -> Multivector:
    """Remove the u(1) part: ``U - (tau_0, U)_(k) tau_0`` with ``tau_0 = i t_(k)``."""
    tau0 = 1j * primitive_idempotent(k)
    return U - normalized_scalar_product(k, tau0, U) * tau0


def right_multiplication_matrix(t: Multivector) -> np.ndarray:
    """Complex 16x16 matrix of ``U -> U t`` on blade coefficients."""
    cols = [(Multivector.blade(m) * t).coeffs for m in range(16)]
    return np.array(cols).T


def ideal_dimension(k: int) -> int:
    """Complex dimension of ``I(t_(k))`` as the rank of right multiplication."""
    return int(np.linalg.matrix_rank(right_multiplication_matrix(primitive_idempotent(k)), tol=1e-10))


@dataclass(frozen=True, eq=False)
class IdealFrame:
    """Idempotent, orthonormal ideal basis and generators for one k."""

    k: int
    t: Multivector
    basis: tuple
    lie: LieBasis
    basis_matrix: np.ndarray = field(repr=False)  # (16, 4k), column K = coeffs of t_K
    blade_gammas: np.ndarray = field(repr=False)  # (16, 4k, 4k), gamma of each blade

    @property
    def dim(self) -> int:
        return 4 * self.k

    @property
    def generators(self):
        return self.lie.taus

    def coords(self, U: Multivector) -> np.ndarray:
        """``(t_K, U)`` for every basis form (jets pass through)."""
        return _dual_rows(self) @ U.coeffs

    def in_ideal(self, U: Multivector, tol=EPS_ALG):
        r = (U.value() * self.t - U.value()).norm()
        return r <= tol * max(1.0, U.value().norm()), r


@lru_cache(maxsize=None)
def _dual_rows_cached(k):
    fr = ideal_basis(k)
    # (t_K, U) = Tr(t_K^dagger U) is linear in U: row K of coefficient weights
    rows = np.zeros((fr.dim, 16), dtype=complex)
    for K, tk in enumerate(fr.basis):
        for m in range(16):
            rows[K, m] = scalar_product(tk, Multivector.blade(m))
    rows.flags.writeable = False
    return rows


def _dual_rows(frame):
    return _dual_rows_cached(frame.k)


@lru_cache(maxsize=None)
def ideal_basis(k: int) -> IdealFrame:
    _check_k(k)
    Y = matrix_unit_forms()
    # t_{4(n-1)+j} = 2 Y^j_n, n = 1..k, j = 1..4
    basis = tuple(2 * Y[j][n] for n in range(k) for j in range(4))
    bm = np.array([b.coeffs for b in basis]).T
    bm.flags.writeable = False
    gammas = np.zeros((16, 4 * k, 4 * k), dtype=complex)
    for m in range(16):
        blade = Multivector.blade(m)
        for N, tn in enumerate(basis):
            img = blade * tn
            for K, tk in enumerate(basis):
                gammas[m, K, N] = scalar_product(tk, img)
    gammas.flags.writeable = False
    return IdealFrame(k, primitive_idempotent(k), basis, lie_generators(k), bm, gammas)


def require_in_ideal(frame: IdealFrame, U: Multivector, tol=EPS_ALG):
    ok, r = frame.in_ideal(U, tol)
    if not ok:
        raise DomainError(f"form is not in the left ideal I(t_({frame.k})): |Ut - U| = {r:.3g}", residual=r)
