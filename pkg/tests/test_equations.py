import numpy as np
import pytest

from cliff13 import jets
from cliff13.algebra import H, ONE, Multivector, commutator, isclose
from cliff13.calculus import b_field
from cliff13.errors import DomainError
from cliff13.equations import (
    I_EVEN, conservation_identity, current, dirac_residual, even_equation_equivalence, even_solve, field_strength,
    gauge_transform_spin, gauge_transform_unitary, lagrangian_density, raise_two, ym_consistency_residual, unitary_field,
    ym_residual,
)
from cliff13.geometry import Geometry, tetrad_from_config
from cliff13.ideals import ideal_basis, lie_generators, primitive_idempotent
from cliff13.spin import exp_series
from cliff13.suites import (
    random_even, random_mv, random_potential, random_wave, rest_frame_even, rest_frame_wave,
)

X0 = np.array([0.2, -0.1, 0.3, 0.1])
FLAT = tetrad_from_config({"preset": "flat"})
CONF = tetrad_from_config({"preset": "conformal"})
M = 0.9


def zero4(order=1):
    return [Multivector.zero(order)] * 4


def test_rest_frame_solution():
    geo = Geometry(FLAT, X0, 1)
    psi = rest_frame_wave(M).jet(X0, 1)
    assert dirac_residual(geo, ideal_basis(1), psi, None, M).value().norm() < 1e-14
    lhs, rhs = conservation_identity(geo, psi, None, M)
    assert lhs.norm() < 1e-14 and rhs.norm() < 1e-14
    L = lagrangian_density(geo, psi, None, M)
    assert abs(L) < 1e-14


def test_constant_massless_wave():
    geo = Geometry(FLAT, X0, 1)
    psi = Multivector(jets.promote(ideal_basis(2).basis[3].coeffs * (1 + 2j), jets.size(1)))
    assert dirac_residual(geo, ideal_basis(2), psi).value().norm() == 0


def test_membership_is_enforced():
    geo = Geometry(FLAT, X0, 1)
    with pytest.raises(DomainError):
        dirac_residual(geo, ideal_basis(1), Multivector.scalar(1.0, order=1))
    psi = rest_frame_wave(M).jet(X0, 1)
    bad = [Multivector(jets.promote(Multivector.blade("1").coeffs, jets.size(1)))] + zero4()[1:]
    with pytest.raises(DomainError):
        dirac_residual(geo, ideal_basis(1), psi, bad, M)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_current_properties(k):
    rng = np.random.default_rng(k)
    geo = Geometry(CONF, X0, 1)
    psi = random_wave(rng, k).jet(X0, 1)
    t = primitive_idempotent(k)
    for J in current(geo, psi):
        v = J.value()
        assert isclose(v.dagger(), -v, 1e-12)
        assert commutator(v, t).norm() < 1e-12 * max(1, v.norm())
    for J in current(geo, Multivector.zero(1)):
        assert J.value().norm() == 0


@pytest.mark.parametrize("k", [1, 3])
def test_conservation_identity_conformal(k):
    rng = np.random.default_rng(10 + k)
    geo = Geometry(CONF, X0, 1)
    psi = random_wave(rng, k).jet(X0, 1)
    A = [a.jet(X0, 1) for a in random_potential(rng, k)]
    lhs, rhs = conservation_identity(geo, psi, A, M)
    assert (lhs - rhs).norm() < 1e-8
    assert lhs.norm() > 1e-3


def test_field_strength_basics():
    geo = Geometry(CONF, X0, 2)
    F = field_strength(geo, zero4(2))
    assert all(F[a][b].value().norm() == 0 for a in range(4) for b in range(4))
    assert all(r.norm() == 0 for r in ym_residual(geo, zero4(2), zero4(2)))
    A = [a.jet(X0, 2) for a in random_potential(np.random.default_rng(0), 2)]
    F = field_strength(geo, A)
    for a in range(4):
        for b in range(4):
            assert isclose((F[a][b] + F[b][a]).value(), Multivector.zero(), 0.0)
    # lowering the raised strength recovers it
    Fup = raise_two(geo, F)
    g = jets.value(geo.g)
    for a in range(4):
        for b in range(4):
            low = Multivector.zero()
            for c in range(4):
                for d in range(4):
                    low = low + g[a, c] * g[b, d] * Fup[c][d].value()
            assert isclose(low, F[a][b].value(), 1e-12)


def test_abelian_strength_has_no_commutator():
    geo = Geometry(CONF, X0, 1)
    A = [a.jet(X0, 1) for a in random_potential(np.random.default_rng(2), 1)]
    F = field_strength(geo, A)
    assert isclose(F[0][1].value(), (A[1].d(0) - A[0].d(1)).value(), 1e-14)


@pytest.mark.parametrize("k", [2, 3])
def test_ym_consistency(k):
    geo = Geometry(CONF, X0, 3)
    A = [a.jet(X0, 3) for a in random_potential(np.random.default_rng(k), k, scale=0.3)]
    assert ym_consistency_residual(geo, A) < 1e-7


def test_unitary_gauge():
    k = 2
    geo = Geometry(CONF, X0, 1)
    rng = np.random.default_rng(5)
    psi = random_wave(rng, k).jet(X0, 1)
    A = [a.jet(X0, 1) for a in random_potential(rng, k)]
    one = Multivector(jets.promote(ONE.coeffs, geo.m))
    psi1, A1 = gauge_transform_unitary(geo, psi, A, one)
    assert isclose(psi1.value(), psi.value(), 0.0)
    U = unitary_field(geo, 0.3 * lie_generators(k).taus[1])
    psi_t, A_t = gauge_transform_unitary(geo, psi, A, U)
    om = dirac_residual(geo, ideal_basis(k), psi, A, M)
    om_t = dirac_residual(geo, ideal_basis(k), psi_t, A_t, M)
    assert isclose(om_t.value(), (om * U).value(), 1e-10)
    with pytest.raises(DomainError):
        gauge_transform_unitary(geo, psi, A, 2 * one)


def test_spin_gauge_identity_and_errors():
    geo = Geometry(CONF, X0, 1)
    psi = random_wave(np.random.default_rng(6), 1).jet(X0, 1)
    one = Multivector(jets.promote(ONE.coeffs, geo.m))
    B = b_field(geo)
    psi_c, _, B_c, chk = gauge_transform_spin(geo, psi, zero4(), one, M)
    assert isclose(psi_c.value(), psi.value(), 0.0)
    assert all(isclose(B_c[mu].value(), B[mu].value(), 0.0) for mu in range(4))
    assert isclose(chk.value(), dirac_residual(geo, None, psi, None, M).value(), 1e-14)
    with pytest.raises(DomainError):
        gauge_transform_spin(geo, psi, zero4(), 2 * one)
    S = Multivector(jets.promote(exp_series(Multivector.blade("13", 0.4)).value.coeffs, geo.m))
    _, _, _, chk = gauge_transform_spin(geo, psi, zero4(), S, M)
    assert isclose(chk.value(), (dirac_residual(geo, None, psi, None, M) * S).value(), 1e-12)


def test_lagrangian_zero_and_real():
    geo = Geometry(CONF, X0, 1)
    assert lagrangian_density(geo, Multivector.zero(1)) == 0
    rng = np.random.default_rng(8)
    L = lagrangian_density(geo, random_wave(rng, 2).jet(X0, 1), [a.jet(X0, 1) for a in random_potential(rng, 2)], M)
    assert abs(L.imag) < 1e-10 * max(1, abs(L))


def test_even_structure_elements():
    t = primitive_idempotent(1)
    assert isclose(H * t, t, 0.0)
    assert isclose(I_EVEN * t, 1j * t, 0.0)
    # the unit imaginary bivector -i e12 does not act as i on t_(1)
    assert not isclose(Multivector.blade("12", -1j) * t, 1j * t)


def test_decomposition_coefficients():
    fr1 = ideal_basis(1)
    t1 = primitive_idempotent(1)
    assert fr1.coords(ONE * t1)[0] == pytest.approx(0.5)
    assert fr1.coords(Multivector.blade("12") * t1)[0] == pytest.approx(-0.5j)
    fr2 = ideal_basis(2)
    v, w = 0.7, -1.3
    c = fr2.coords(Multivector.scalar(v + 1j * w) * fr2.t)
    assert c[0] == pytest.approx((v + 1j * w) / 2)
    assert c[5] == pytest.approx((v + 1j * w) / 2)


@pytest.mark.parametrize("k", [1, 2])
def test_even_solve_round_trip(k):
    rng = np.random.default_rng(k)
    t = primitive_idempotent(k)
    for _ in range(10):
        psi = random_even(rng, k).jet(X0, 0).value()
        assert isclose(even_solve(k, psi * t), psi, 1e-12)
        phi = random_mv(rng) * t
        sol = even_solve(k, phi)
        assert isclose(sol * t, phi, 1e-12)
        assert sol.odd().norm() == 0
        if k == 1:
            assert np.abs(sol.coeffs.imag).max() == 0


def test_even_solve_errors():
    with pytest.raises(DomainError):
        even_solve(1, ONE)
    with pytest.raises(ValueError):
        even_solve(3, primitive_idempotent(3))


def test_even_rest_frame_fixture():
    geo = Geometry(FLAT, X0, 1)
    ev = rest_frame_even(M).jet(X0, 1)
    e_res, i_res, diff = even_equation_equivalence(geo, 1, ev, None, M)
    assert e_res.norm() < 1e-14 and i_res.norm() < 1e-14 and diff < 1e-14
    lifted = even_solve(1, rest_frame_wave(M)(X0))
    assert isclose(lifted, ev.value(), 1e-12)
