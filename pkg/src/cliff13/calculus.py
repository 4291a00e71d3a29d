"""Covariant operators on form-valued fields: Upsilon, B, D and the volume form.

Forms are jet-valued :class:`Multivector` objects in the tetrad basis.  The
operator ``D_mu`` is then the coefficient-wise partial derivative, and
``Upsilon_mu = D_mu + [B_mu, .]``.  A second, independent Upsilon works
through coordinate components and the Levi-Civita covariant derivative; it
exists to cross-check the first.  Extra tensor indices carried by a form
are treated as labels.
"""
from __future__ import annotations

from itertools import permutations

import numpy as np

from . import jets
from .algebra import E, GRADE, Multivector, commutator
from .geometry import Geometry, _ETA_DIAG, covariant_derivative
from .jets import _perm_parity as _perm_sign

_BLADES_BY_GRADE = {k: [m for m in range(16) if GRADE[m] == k] for k in range(5)}


def _indices(mask):
    return tuple(i for i in range(4) if mask >> i & 1)


def as_jet(geo: Geometry, U: Multivector) -> Multivector:
    """Constant forms become constant jets of the geometry's order."""
    return U if U.is_jet else Multivector(jets.promote(U.coeffs, geo.m))


def d_op(geo: Geometry, mu: int, U: Multivector) -> Multivector:
    """``D_mu U``: partial derivative of the tetrad-basis coefficients."""
    return as_jet(geo, U).d(mu)


def connection_coefficients(geo: Geometry) -> np.ndarray:
    """``omega[mu, a, c] = e_{nu a; mu} e^nu_c`` (jets)."""
    E_low = geo.E * _ETA_DIAG[None, :, None]  # e_{nu a}, a is a label
    dE = np.stack([jets.deriv(E_low, r) for r in range(4)])  # [mu, nu, a]
    cov = dE - jets.einsum("nml,la->mna", geo.christoffel, E_low)
    return jets.einsum("mna,nc->mac", cov, geo.dual)


def b_field(geo: Geometry):
    """``B_mu = -1/4 e^a ^ Upsilon_mu e_a`` for mu = 0..3 (jet 2-forms)."""
    om = connection_coefficients(geo)
    out = []
    for mu in range(4):
        c = np.zeros((16, geo.m))
        for a in range(4):
            for b in range(4):
                if a != b:
                    # e^a ^ e^b = sign * e^{ab sorted}
                    mask = (1 << a) | (1 << b)
                    c[mask] += -0.25 * om[mu, a, b] * (1.0 if a < b else -1.0)
        out.append(Multivector(c))
    return out


def b_coefficients(B) -> np.ndarray:
    """Antisymmetric ``b[mu, a, b]`` with ``B_mu = 1/2 b_{mu ab} e^a ^ e^b`` (point values)."""
    b = np.zeros((len(B), 4, 4))
    for mu, Bm in enumerate(B):
        v = Bm.value().coeffs.real
        for a in range(4):
            for c in range(a + 1, 4):
                b[mu, a, c] = v[(1 << a) | (1 << c)]
                b[mu, c, a] = -b[mu, a, c]
    return b


def upsilon(geo: Geometry, mu: int, U: Multivector, B=None) -> Multivector:
    """Fast path ``D_mu U + [B_mu, U]``."""
    B = B if B is not None else b_field(geo)
    U = as_jet(geo, U)
    return U.d(mu) + commutator(B[mu], U)


def _to_tensor(coeffs, k, m):
    """Antisymmetric Latin-index tensor u_{a1..ak} of the grade-k part."""
    T = np.zeros((4,) * k + (m,), dtype=complex)
    for mask in _BLADES_BY_GRADE[k]:
        idx = _indices(mask)
        for perm in permutations(range(k)):
            T[tuple(idx[p] for p in perm)] = _perm_sign(perm) * coeffs[mask]
    return T


def upsilon_coordinate(geo: Geometry, mu: int, U: Multivector, order: int | None = None) -> Multivector:
    """Coordinate components, Levi-Civita derivative, back to the tetrad basis.

    ``order`` truncates all inputs first; ``order=1`` is enough for the
    point value and much cheaper.
    """
    c = as_jet(geo, U).coeffs
    E_, dual, chris = geo.E, geo.dual, geo.christoffel
    if order is not None:
        c, E_, dual, chris = (jets.truncate(a, order) for a in (c, E_, dual, chris))
    m = c.shape[-1]
    out = np.zeros((16, m), dtype=complex)
    out[0] = jets.deriv(c[0], mu)
    letters = "abcd"
    for k in range(1, 5):
        if not np.any(c[_BLADES_BY_GRADE[k]]):
            continue
        T = _to_tensor(c, k, m)
        for i in range(k):  # Latin -> Greek on slot i
            src = letters[:k]
            dst = letters[:i] + "x" + letters[i + 1:k]
            T = jets.apply_slot(E_, T, i) if k > 2 else jets.einsum(f"{src},x{letters[i]}->{dst}", T, E_)
        D = covariant_derivative(T, "l" * k, chris)[(slice(None),) * k + (mu,)]
        for i in range(k):  # Greek -> Latin with e^nu_a
            src = letters[:k]
            dst = letters[:i] + "x" + letters[i + 1:k]
            D = jets.apply_slot(dual.swapaxes(0, 1), D, i) if k > 2 else jets.einsum(f"{src},{letters[i]}x->{dst}", D, dual)
        for mask in _BLADES_BY_GRADE[k]:
            out[mask] = D[_indices(mask)]
    return Multivector(out)


def volume_form(geo: Geometry):
    """``(l, coordinate coefficient)``: l = e^{0123}, l = det(e) dx^0^...^dx^3."""
    ell = Multivector.blade(15)
    return ell, float(jets.value(jets.det(geo.E)))


def upsilon_commutator_check(geo: Geometry, mu: int, nu: int, lam: int, method="fast") -> dict:
    """Both sides of ``(Y_mu Y_nu - Y_nu Y_mu) dx^lam = -R^lam_{rho mu nu} dx^rho``."""
    ups = (lambda m_, U: upsilon(geo, m_, U, B)) if method == "fast" else (lambda m_, U: upsilon_coordinate(geo, m_, U))
    B = b_field(geo) if method == "fast" else None
    dxl = geo.dx(lam)
    lhs = ups(mu, ups(nu, dxl)) - ups(nu, ups(mu, dxl))
    R = geo.riemann  # R_{rho mu nu}^lam
    rhs = Multivector.zero(geo.order)
    for rho in range(4):
        rhs = rhs - geo.dx(rho).scale(R[rho, mu, nu, lam])
    lv, rv = lhs.value(), rhs.value()
    return {"lhs": lv, "rhs": rv, "residual": (lv - rv).norm()}


def b_transformation_check(tetrad, x, order: int = 2) -> float:
    """Connection law for B under a position-dependent Lorentz rotation.

    ``tetrad`` is a spin-rotated preset over its base.  The rotated B is
    computed from scratch on the rotated tetrad (coefficients relative to
    the rotated basis, hence conjugated back by S) and compared with
    ``S^{-1} B S - S^{-1} Upsilon_mu S`` evaluated on the base geometry.
    Returns the max residual over mu.
    """
    base = Geometry(tetrad.base, x, order)
    rot = Geometry(tetrad, x, order)
    S = tetrad.spin_jet(x, order)
    Sinv = S.star()
    B = b_field(base)
    Bc = b_field(rot)
    worst = 0.0
    for mu in range(4):
        # a form with coefficients c in the rotated basis is S^{-1} (c_A e^A) S
        lhs = (Sinv * Bc[mu] * S).value()
        rhs = (Sinv * B[mu] * S).value() - Sinv.value() * upsilon_coordinate(base, mu, S, 1).value()
        worst = max(worst, (lhs - rhs).norm())
    return worst


def pullback_covector_check(base_tetrad, pulled, y, U_field, order: int = 2) -> float:
    """Covector law of Upsilon under ``x = phi(y)`` on a field of forms.

    ``pulled`` is a :class:`PulledBackTetrad` of ``base_tetrad``; the form
    field is given in base coordinates and pulled back by substitution
    (tetrad-basis coefficients are scalars).
    """
    x = pulled.point_map(y)
    g_new = Geometry(pulled, y, order)
    g_old = Geometry(base_tetrad, x, order)
    U_new = U_field.substitute(pulled.coords).jet(y, order)
    U_old = U_field.jet(x, order)
    J = pulled.jacobian(y)  # J[mu, nu] = dx^nu / dy^mu
    old = [upsilon_coordinate(g_old, nu, U_old, 1).value() for nu in range(4)]
    worst = 0.0
    for mu in range(4):
        new = upsilon_coordinate(g_new, mu, U_new, 1).value()
        ref = Multivector.zero()
        for nu in range(4):
            ref = ref + J[mu, nu] * old[nu]
        worst = max(worst, (new - ref).norm())
    return worst
