"""Dirac-type tensor equation, currents, Yang-Mills system and gauge checks.

Everything works pointwise on jet-valued forms over a :class:`Geometry`.
A quantity that is differentiated d times must be supplied with jets of
order at least d; the geometry must have the same order.
"""
from __future__ import annotations

import numpy as np

from . import jets
from .algebra import EPS_ALG, H, Multivector, commutator, mv_exp
from .calculus import as_jet, b_field
from .errors import DomainError, RepresentationError
from .geometry import Geometry
from .ideals import IdealFrame, ideal_basis, normalized_scalar_product, primitive_idempotent, traceless_projection

EPS_FIELD = 1e-8
I_EVEN = Multivector.blade("12", -1.0)  # satisfies I t_(1) = i t_(1)
EVEN_GENERATORS = {
    1: (I_EVEN,),
    2: (Multivector.scalar(1j), Multivector.blade("23"), Multivector.blade("13", -1.0), Multivector.blade("12")),
}


def _zero_potential(geo):
    return [Multivector.zero(geo.order)] * 4


def check_wave(frame: IdealFrame, psi: Multivector, tol=EPS_FIELD):
    ok, r = frame.in_ideal(psi, tol)
    if not ok:
        raise DomainError(f"wave field leaves I(t): residual {r:.3g}", residual=r)


def check_potential(frame: IdealFrame, A, tol=EPS_FIELD):
    for mu, Am in enumerate(A):
        v = Am.value()
        r = max((v.dagger() + v).norm(), commutator(v, frame.t).norm(), (v * frame.t - v).norm())
        if r > tol * max(1.0, v.norm()):
            raise DomainError(f"A_{mu} is not in L(t): residual {r:.3g}", residual=r)


def covariant_terms(geo: Geometry, psi: Multivector, A, B=None):
    """``[D_mu Psi + Psi A_mu + B_mu Psi for mu in 0..3]``."""
    B = B if B is not None else b_field(geo)
    psi = as_jet(geo, psi)
    return [psi.d(mu) + psi * as_jet(geo, A[mu]) + B[mu] * psi for mu in range(4)]


def dirac_residual(geo: Geometry, frame: IdealFrame | None, psi, A=None, m=0.0, B=None, check=True) -> Multivector:
    """``Omega = dx^mu (D_mu Psi + Psi A_mu + B_mu Psi) + i m Psi`` (jet, one order lost)."""
    A = A if A is not None else _zero_potential(geo)
    if check and frame is not None:
        check_wave(frame, psi.value())
        check_potential(frame, A)
    terms = covariant_terms(geo, psi, A, B)
    out = 1j * m * as_jet(geo, psi)
    for mu in range(4):
        out = out + geo.dx(mu) * terms[mu]
    return out


def alpha(geo: Geometry, mu: int) -> Multivector:
    """``alpha^mu = H dx^mu``."""
    return H * geo.dx(mu)


def q_form(geo, psi, A=None, m=0.0, B=None) -> Multivector:
    """``Q = H Omega``."""
    return H * dirac_residual(geo, None, psi, A, m, B, check=False)


def current(geo: Geometry, psi: Multivector, frame: IdealFrame | None = None, traceless=False):
    """``J^mu = i Psi^dagger alpha^mu Psi``; optionally minus its u(1) part."""
    psi = as_jet(geo, psi)
    pd = psi.dagger()
    J = [1j * (pd * alpha(geo, mu) * psi) for mu in range(4)]
    if traceless:
        if frame is None:
            raise ValueError("traceless current needs the ideal frame")
        tau0 = 1j * frame.t
        J = [Jm - tau0.scale(normalized_scalar_product(frame.k, tau0, Jm)) for Jm in J]
    return J


def _div(geo: Geometry, A, V):
    """``(1/sqrt(-g)) D_mu (sqrt(-g) V^mu) - [A_mu, V^mu]``."""
    sg = geo.sqrt_neg_g
    inv = jets.reciprocal(sg)
    out = Multivector.zero(geo.order)
    for mu in range(4):
        out = out + V[mu].scale(sg).d(mu).scale(inv) - commutator(as_jet(geo, A[mu]), V[mu])
    return out


def conservation_identity(geo: Geometry, psi, A=None, m=0.0, frame=None, traceless=False):
    """Both sides of ``i(Psi^dag Q + Q^dag Psi) = (1/sqrt(-g)) D(sqrt(-g) J) - [A, J]``."""
    A = A if A is not None else _zero_potential(geo)
    psi = as_jet(geo, psi)
    Q = q_form(geo, psi, A, m)
    lhs = 1j * (psi.dagger() * Q + Q.dagger() * psi)
    rhs = _div(geo, A, current(geo, psi, frame, traceless))
    if traceless:
        # the u(1) part is central, so projecting commutes with the divergence
        return traceless_projection(frame.k, lhs.value()), rhs.value()
    return lhs.value(), rhs.value()


def field_strength(geo: Geometry, A):
    """``F[mu][nu] = D_mu A_nu - D_nu A_mu - [A_mu, A_nu]``."""
    A = [as_jet(geo, a) for a in A]
    F = [[None] * 4 for _ in range(4)]
    for mu in range(4):
        F[mu][mu] = Multivector.zero(geo.order)
        for nu in range(mu + 1, 4):
            f = A[nu].d(mu) - A[mu].d(nu) - commutator(A[mu], A[nu])
            F[mu][nu], F[nu][mu] = f, -f
    return F


def raise_two(geo: Geometry, F):
    """``F^{mu nu} = g^{mu a} g^{nu b} F_{ab}``."""
    gi = geo.ginv
    out = [[Multivector.zero(geo.order) for _ in range(4)] for _ in range(4)]
    for mu in range(4):
        for nu in range(4):
            acc = Multivector.zero(geo.order)
            for a in range(4):
                for b in range(4):
                    if a != b:
                        acc = acc + F[a][b].scale(jets.mul(gi[mu, a], gi[nu, b]))
            out[mu][nu] = acc
    return out


def ym_divergence(geo: Geometry, A, F=None):
    """``R^nu = (1/sqrt(-g)) D_mu (sqrt(-g) F^{mu nu}) - [A_mu, F^{mu nu}]``."""
    F = F if F is not None else field_strength(geo, A)
    Fup = raise_two(geo, F)
    return [_div(geo, A, [Fup[mu][nu] for mu in range(4)]) for nu in range(4)]


def ym_residual(geo: Geometry, A, J):
    R = ym_divergence(geo, A)
    return [(R[nu] - as_jet(geo, J[nu])).value() for nu in range(4)]


def ym_consistency_residual(geo: Geometry, A) -> float:
    """Norm of ``(1/sqrt(-g)) D_mu (sqrt(-g) R^mu) - [A_mu, R^mu]`` (needs order 3)."""
    R = ym_divergence(geo, A)
    return _div(geo, A, R).value().norm()


def lagrangian_density(geo: Geometry, psi, A=None, m=0.0, C=1.0):
    """Pointwise Lagrangian; returns the complex value so callers can check reality."""
    A = A if A is not None else _zero_potential(geo)
    psi = as_jet(geo, psi)
    Q = q_form(geo, psi, A, m)
    sg = jets.value(geo.sqrt_neg_g)
    pv, qv = psi.value(), Q.value()
    dirac = 0.25j * sg * (pv.dagger() * H * qv - qv.dagger() * H * pv).trace()
    F = field_strength(geo, A)
    Fup = raise_two(geo, F)
    ff = sum((F[mu][nu].value() * Fup[mu][nu].value()).trace() for mu in range(4) for nu in range(4))
    return dirac + C * 0.25 * sg * ff / 8.0


# gauge transformations --------------------------------------------------

def unitary_field(geo: Geometry, generator: Multivector) -> Multivector:
    """``exp(X)`` for a jet-valued X in L(t)."""
    return mv_exp(as_jet(geo, generator))


def gauge_transform_unitary(geo: Geometry, psi, A, U, tol=EPS_FIELD):
    """``(Psi U, U^-1 A U - U^-1 D U)`` with ``U^-1 = U^dagger``."""
    Uv = U.value()
    r = (Uv.dagger() * Uv - 1).norm()
    if r > tol:
        raise DomainError(f"gauge field is not unitary: |U^dag U - 1| = {r:.3g}", residual=r)
    Ui = U.dagger()
    psi_t = as_jet(geo, psi) * U
    A_t = [Ui * as_jet(geo, A[mu]) * U - Ui * U.d(mu) for mu in range(4)]
    return psi_t, A_t


def gauge_transform_spin(geo: Geometry, psi, A, S, m=0.0, B=None):
    """Checked quantities for a Spin field S (all in the unrotated basis).

    Returns ``(Psi S, S^-1 A S, B - S^-1 D S, checked residual)``; the checked
    residual uses ``D + [S^-1 D S, .]`` and should equal ``Omega S``.
    """
    from .spin import is_spin

    ok, res = is_spin(S.value())
    if not ok:
        raise DomainError(f"not a Spin field: {res}", residual=res)
    B = B if B is not None else b_field(geo)
    Si = S.star()
    psi = as_jet(geo, psi)
    psi_c = psi * S
    A_c = [Si * as_jet(geo, A[mu]) * S for mu in range(4)]
    conn = [Si * S.d(mu) for mu in range(4)]
    B_c = [B[mu] - conn[mu] for mu in range(4)]
    out = 1j * m * psi_c
    for mu in range(4):
        d_c = psi_c.d(mu) + commutator(conn[mu], psi_c)
        out = out + geo.dx(mu) * (d_c + psi_c * A_c[mu] + B_c[mu] * psi_c)
    return psi_c, A_c, B_c, out


# even forms ------------------------------------------------

_EVEN_MASKS = [m for m in range(16) if bin(m).count("1") % 2 == 0]


def _even_matrix(k: int) -> np.ndarray:
    """Real matrix of ``Psi -> coords(Psi t_(k))`` on the even unknowns."""
    frame = ideal_basis(k)
    cols = []
    units = [1.0] if k == 1 else [1.0, 1j]
    for u in units:
        for m in _EVEN_MASKS:
            c = frame.coords(Multivector.blade(m, u) * frame.t)
            cols.append(np.concatenate([c.real, c.imag]))
    return np.array(cols).T


def even_solve(k: int, phi: Multivector, tol=EPS_ALG) -> Multivector:
    """The unique even Psi (real for k=1, complex for k=2) with ``Psi t_(k) = phi``."""
    if k not in (1, 2):
        raise ValueError("even forms are defined for k = 1 and k = 2")
    frame = ideal_basis(k)
    ok, r = frame.in_ideal(phi, tol)
    if not ok:
        raise DomainError(f"phi is not in I(t_({k})): residual {r:.3g}", residual=r)
    M = _even_matrix(k)
    if np.linalg.matrix_rank(M) != M.shape[1]:
        raise RepresentationError("even-form system is rank deficient")
    c = frame.coords(phi)
    rhs = np.concatenate([c.real, c.imag])
    sol = np.linalg.solve(M, rhs)
    out = np.zeros((16,) + sol.shape[1:], dtype=complex)
    n = len(_EVEN_MASKS)
    out[_EVEN_MASKS] = sol[:n]
    if k == 2:
        out[_EVEN_MASKS] += 1j * sol[n:]
    return Multivector(out)


def even_residual(geo: Geometry, k: int, psi_even, A_even=None, m=0.0, B=None) -> Multivector:
    """k=1: ``dx(D Psi + Psi A + B Psi) H + m Psi I``; k=2: ``... H + i m Psi``."""
    A_even = A_even if A_even is not None else _zero_potential(geo)
    terms = covariant_terms(geo, psi_even, A_even, B)
    out = None
    for mu in range(4):
        term = geo.dx(mu) * terms[mu]
        out = term if out is None else out + term
    psi = as_jet(geo, psi_even)
    last = m * psi * I_EVEN if k == 1 else 1j * m * psi
    return out * H + last


def even_equation_equivalence(geo: Geometry, k: int, psi_even, A_even=None, m=0.0):
    """``(even residual, ideal residual, |even residual * t - ideal residual|)`` at the point."""
    A_even = A_even if A_even is not None else _zero_potential(geo)
    t = primitive_idempotent(k)
    B = b_field(geo)
    ev = even_residual(geo, k, psi_even, A_even, m, B).value()
    psi = as_jet(geo, psi_even) * t
    A = [as_jet(geo, a) * t for a in A_even]
    ideal = dirac_residual(geo, ideal_basis(k), psi, A, m, B).value()
    return ev, ideal, (ev * t - ideal).norm()


def spin_covariance_check(rot_tetrad, x, frame: IdealFrame, psi_field, A_fields, m=0.0, order=1) -> float:
    """End-to-end spin covariance on a spin-rotated preset.

    The residual is recomputed from scratch on the rotated tetrad for the
    fields whose rotated-basis coefficients are ``S Psi`` and ``A`` (the
    coefficient form of ``Psi S`` and ``S^-1 A S``).  It must equal the
    coefficient form ``S Omega`` of ``Omega S``.
    """
    base = Geometry(rot_tetrad.base, x, order)
    rot = Geometry(rot_tetrad, x, order)
    S = rot_tetrad.spin_jet(x, order)
    psi = psi_field.jet(x, order)
    A = [a.jet(x, order) for a in A_fields]
    omega = dirac_residual(base, frame, psi, A, m)
    omega_rot = dirac_residual(rot, frame, S * psi, A, m)
    return (omega_rot.value() - (S * omega).value()).norm()
