"""Randomized identity suites shared by the CLI and the acceptance tests.

A suite draws its own random inputs from a seed, evaluates a set of named
checks and records the worst residual of each against its tolerance.
Suites are deterministic given ``(arguments, seed)``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import jets, oracles
from .algebra import (
    E, E_LOWER, EPS_ALG, GRADE, ONE, Multivector, anti_hermitian_basis, commutator, contract_generators,
    scalar_product,
)
from .calculus import (
    as_jet, b_field, d_op, pullback_covector_check, b_transformation_check, upsilon, upsilon_commutator_check,
    upsilon_coordinate,
)
from .equations import (
    EVEN_GENERATORS, conservation_identity, current, dirac_residual, even_equation_equivalence, even_solve,
    field_strength, gauge_transform_spin, gauge_transform_unitary, lagrangian_density, spin_covariance_check,
    ym_consistency_residual, unitary_field,
)
from .fields import (
    Const, Exp, FormField, Poly, X, combine, linear, random_analytic, random_form, random_poly,
)
from .geometry import (
    DEFAULT_SPIN_GENERATOR, EPS_GEO, Geometry, PulledBackTetrad, SpinRotatedTetrad, TetradField,
    covariant_derivative, sample_points, spin_rotated, tetrad_from_config, _poly_from_terms,
)
from .ideals import (
    ideal_basis, ideal_dimension, lie_generators, matrix_unit_forms, primitive_idempotent,
    structure_constants,
)
from .rep import column, dirac_operator_matrix, gamma_fixture_dict, gamma_map, theta_map
from .spin import (
    EPS_SPIN, exp_series, exterior_exp, is_spin, lorentz_matrix, lorentz_residuals,
)
from .errors import OutsideDomainError

EPS_FIELD = 1e-8
EPS_ORACLE = 1e-5
# curvature-free presets have a zero reference; FD rounding is ~1e-8 there
RIEMANN_FLOOR = 0.1


@dataclass
class Check:
    name: str
    tol: float
    count: int = 0
    max_residual: float = 0.0

    def add(self, r) -> None:
        r = float(r)
        self.count += 1
        if not r <= self.max_residual:  # also catches nan
            self.max_residual = r

    @property
    def passed(self) -> bool:
        return self.count > 0 and self.max_residual <= self.tol

    def to_dict(self):
        return {"name": self.name, "checks": self.count, "max_residual": self.max_residual,
                "tolerance": self.tol, "pass": self.passed}


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def check(self, name: str, tol: float) -> Check:
        c = Check(name, tol)
        self.checks.append(c)
        return c

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def count(self) -> int:
        return sum(c.count for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.checks), default=0.0)

    def failing(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {
            "name": self.name, **self.params, "checks": self.count, "max_residual": self.max_residual,
            "pass": self.passed, "details": [c.to_dict() for c in self.checks],
        }


def rng_for(seed: int, *key) -> np.random.Generator:
    """Independent stream per (seed, suite key)."""
    words = [int(seed)] + [sum(ord(ch) * 31**i for i, ch in enumerate(str(k))) % 2**32 for k in key]
    return np.random.default_rng(np.random.SeedSequence(words))


def rel(a: Multivector, b: Multivector) -> float:
    return (a - b).norm() / max(1.0, a.norm(), b.norm())


def random_mv(rng, scale=1.0, real=False) -> Multivector:
    c = rng.normal(size=16) * scale
    if not real:
        c = c + 1j * rng.normal(size=16) * scale
    return Multivector(c)


def random_bivector(rng, scale=0.5) -> Multivector:
    c = np.zeros(16)
    c[GRADE == 2] = rng.normal(size=6) * scale
    return Multivector(c)


# random fields for the equations ------------------------------------

def random_wave(rng, k: int, degree=2, scale=1.0) -> FormField:
    """``psi^K(x) t_K`` with random complex analytic components."""
    frame = ideal_basis(k)
    return combine([random_analytic(rng, degree, scale) for _ in frame.basis], frame.basis)


def random_potential(rng, k: int, degree=2, scale=0.5):
    """Four L(t)-valued fields: real analytic combinations of the generators."""
    taus = lie_generators(k).taus
    return [combine([random_analytic(rng, degree, scale, complex_=False) for _ in taus], taus) for _ in range(4)]


def random_even(rng, k: int, degree=2, scale=1.0) -> FormField:
    masks = [m for m in range(16) if GRADE[m] % 2 == 0]
    return FormField({m: random_analytic(rng, degree, scale, complex_=(k == 2)) for m in masks})


def random_even_potential(rng, k: int, degree=2, scale=0.5):
    gens = EVEN_GENERATORS[k]
    return [combine([random_analytic(rng, degree, scale, complex_=False) for _ in gens], gens) for _ in range(4)]


def random_covector(rng, degree=3, scale=1.0):
    return [random_analytic(rng, degree, scale, complex_=False) for _ in range(4)]


def rest_frame_wave(m: float) -> FormField:
    """``exp(-i m x^0) t_1``: the rest-frame solution on the flat frame, k = 1."""
    return FormField.scaled(Exp(-1j * m * X[0]), ideal_basis(1).basis[0])


def rest_frame_even(m: float) -> FormField:
    """Even lift of :func:`rest_frame_wave`: ``2 (cos(m x^0) + sin(m x^0) e^{12})``."""
    from .fields import cos, sin

    return FormField({"": 2.0 * cos(m * X[0]), "12": 2.0 * sin(m * X[0])})


DEFAULT_DIFFEO = (
    X[0] + Poly({(0, 1, 0, 0): 0.0, (1, 1, 0, 0): 0.1, (0, 0, 2, 0): 0.05}),
    X[1] + Poly({(2, 0, 0, 0): 0.08, (0, 0, 1, 1): -0.06}),
    X[2] + Poly({(0, 1, 1, 0): 0.07, (0, 0, 0, 2): 0.04}),
    X[3] + Poly({(1, 0, 0, 1): -0.05, (0, 2, 0, 0): 0.03}),
)


def as_spin_rotated(tetrad: TetradField) -> SpinRotatedTetrad:
    """The preset itself if spin-rotated, else the default spin rotation over it."""
    if isinstance(tetrad, SpinRotatedTetrad):
        return tetrad
    gen = FormField({lab: _poly_from_terms(t) for lab, t in DEFAULT_SPIN_GENERATOR.items()})
    return spin_rotated(tetrad, gen)


# algebra ----------------------------------------------------------------

def algebra_suite(seed=0, n=1000) -> SuiteResult:
    rng = rng_for(seed, "algebra")
    res = SuiteResult("algebra", params={"cases": n})
    cl = res.check("clifford_generators", 0.0)
    for a in range(4):
        for b in range(4):
            lhs = E[a] * E[b] + E[b] * E[a]
            eta = (1.0 if a == 0 else -1.0) if a == b else 0.0
            cl.add((lhs - 2 * eta * ONE).norm())
    assoc = res.check("associativity", EPS_ALG)
    star = res.check("star_antiautomorphism", EPS_ALG)
    dag = res.check("dagger_antiautomorphism", EPS_ALG)
    inv = res.check("involutions", EPS_ALG)
    cyc = res.check("trace_cyclicity", EPS_ALG)
    th3 = res.check("generator_contraction_grades", EPS_ALG)
    wedge = res.check("wedge_associativity", EPS_ALG)
    factors = np.array([4, -2, 0, 2, -4])
    for _ in range(n):
        U, V, W = random_mv(rng), random_mv(rng), random_mv(rng)
        assoc.add(rel((U * V) * W, U * (V * W)))
        wedge.add(rel((U ^ V) ^ W, U ^ (V ^ W)))
        star.add(rel((U * V).star(), V.star() * U.star()))
        dag.add(rel((U * V).dagger(), V.dagger() * U.dagger()))
        inv.add(max(rel(U.star().star(), U), rel(U.dagger().dagger(), U)))
        tr_uv, tr_vu = (U * V).trace(), (V * U).trace()
        cyc.add(abs(tr_uv - tr_vu) / max(1.0, abs(tr_uv)))
        expected = Multivector(U.coeffs * factors[GRADE])
        th3.add(rel(contract_generators(U), expected))
    ortho = res.check("anti_hermitian_orthonormality", EPS_ALG)
    basis = anti_hermitian_basis()
    for i, u in enumerate(basis):
        ortho.add((u.dagger() + u).norm())
        for j, v in enumerate(basis):
            ortho.add(abs(scalar_product(u, v) - (1.0 if i == j else 0.0)))
    return res


# spin -------------------------------------------------------------------

def _draw_generator(rng, scale=0.5):
    while True:
        U = random_bivector(rng, scale)
        try:
            return U, exterior_exp(U)
        except OutsideDomainError:
            continue


def spin_suite(seed=0, n=200) -> SuiteResult:
    rng = rng_for(seed, "spin")
    res = SuiteResult("spin", params={"generators": n})
    unit = res.check("unit_norm", EPS_SPIN)
    metric = res.check("lorentz_metric", EPS_FIELD)
    det = res.check("lorentz_det", EPS_FIELD)
    ortho = res.check("lorentz_orthochronous", 0.0)
    grade = res.check("adjoint_preserves_grade", EPS_SPIN)
    for _ in range(n):
        U, S_ext = _draw_generator(rng)
        for S in (exp_series(U), S_ext):
            ok, r = is_spin(S)
            unit.add(max(r.values()))
            lr = lorentz_residuals(lorentz_matrix(S))
            metric.add(lr["metric"])
            det.add(lr["det"])
            ortho.add(0.0 if lr["p00"] > 0 else 1.0 - lr["p00"])
            W = random_mv(rng)
            for k in range(5):
                Wk = W.grade(k)
                img = S.inverse * Wk * S.value
                grade.add((img - img.grade(k)).norm() / max(1.0, img.norm()))
    return res


# ideals -----------------------------------------------------------------

def ideals_suite(seed=0) -> SuiteResult:
    res = SuiteResult("ideals")
    dims = res.check("ideal_dimension", 0.0)
    gens = res.check("generator_count", 0.0)
    ortho = res.check("basis_orthonormality", EPS_ALG)
    for k in (1, 2, 3, 4):
        dims.add(abs(ideal_dimension(k) - 4 * k))
        gens.add(abs(len(lie_generators(k)) - k * k))
        fr = ideal_basis(k)
        for i, a in enumerate(fr.basis):
            ortho.add(fr.in_ideal(a)[1])
            for j, b in enumerate(fr.basis):
                ortho.add(abs(scalar_product(a, b) - (1.0 if i == j else 0.0)))
    # su(2) pattern by direct central products
    su2 = res.check("su2_pattern_k2", 1e-10)
    t2 = primitive_idempotent(2)
    triple = [Multivector.blade("23") * t2, Multivector.blade("13", -1.0) * t2, Multivector.blade("12") * t2]
    taus = lie_generators(2).taus[1:]
    for i in range(3):
        j, l = (i + 1) % 3, (i + 2) % 3
        su2.add(rel(commutator(triple[i], triple[j]), 2 * triple[l]))
        # tau_n = i lambda_n carries the opposite sign
        su2.add(rel(commutator(taus[i], taus[j]), -2 * taus[l]))
        su2.add(rel(triple[i], -taus[i]))
    c = lie_generators(2).structure
    for i in range(3):
        j, l = (i + 1) % 3, (i + 2) % 3
        su2.add(abs(c[l + 1, i + 1, j + 1] + 2))
    k3 = res.check("structure_k3", 1e-10)
    lb = lie_generators(3)
    c3 = structure_constants(3, lb.taus, tol=1e-10)
    k3.add(np.abs(c3 + np.swapaxes(c3, 1, 2)).max())
    for nn in range(len(lb)):
        for ll in range(len(lb)):
            br = commutator(lb.taus[nn], lb.taus[ll])
            k3.add((br - lb.combine(c3[:, nn, ll])).norm())
    return res


# representation -----------------------------------------------------

# gamma matrices as printed, rows top to bottom
GAMMA_PRINTED = np.array([
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
    [[0, 0, 0, -1j], [0, 0, 1j, 0], [0, 1j, 0, 0], [-1j, 0, 0, 0]],
    [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
])


def rep_suite(seed=0, n=200) -> SuiteResult:
    rng = rng_for(seed, "rep")
    res = SuiteResult("rep", params={"cases": n})
    fr1 = ideal_basis(1)
    fix = res.check("gamma_fixture", 0.0)
    fx = gamma_fixture_dict()["gamma"]
    for a in range(4):
        got = np.array([[complex(re, im) for re, im in row] for row in fx[str(a)]])
        fix.add(np.abs(got - GAMMA_PRINTED[a]).max())
        fix.add(np.abs(gamma_map(fr1, E[a]) - GAMMA_PRINTED[a]).max())
    Y = matrix_unit_forms()
    units = res.check("matrix_units", 0.0)
    for r in range(4):
        for c in range(4):
            Em = np.zeros((4, 4))
            Em[r, c] = 1
            units.add(np.abs(gamma_map(fr1, Y[r][c]) - Em).max())
    prods = res.check("matrix_unit_products", EPS_ALG)
    for a in range(4):
        for b in range(4):
            for c in range(4):
                prods.add(rel(Y[a][b] * Y[b][c], Y[a][c]))
    hom = res.check("gamma_homomorphism", EPS_ALG)
    anti = res.check("theta_antihomomorphism", EPS_ALG)
    comm = res.check("gamma_theta_commute", EPS_ALG)
    for _ in range(n):
        k = int(rng.integers(1, 5))
        fr = ideal_basis(k)
        U, V = random_mv(rng), random_mv(rng)
        lhs = gamma_map(fr, U * V)
        hom.add(np.abs(lhs - gamma_map(fr, U) @ gamma_map(fr, V)).max() / max(1.0, np.abs(lhs).max()))
        P, Q = (lie_generators(k).combine(rng.normal(size=k * k)) for _ in range(2))
        th = theta_map(fr, P * Q)
        anti.add(np.abs(th - theta_map(fr, Q) @ theta_map(fr, P)).max() / max(1.0, np.abs(th).max()))
        gu, tp = gamma_map(fr, U), theta_map(fr, P)
        comm.add(np.abs(gu @ tp - tp @ gu).max() / max(1.0, np.abs(gu).max() * np.abs(tp).max()))
    return res


# geometry ---------------------------------------------------------------

def geometry_suite(tetrad: TetradField, seed=0, n=20, name="geometry") -> SuiteResult:
    rng = rng_for(seed, "geometry", name)
    res = SuiteResult("geometry", params={"preset": name, "points": n})
    sym = res.check("christoffel_symmetry", EPS_GEO)
    compat = res.check("metric_compatibility", EPS_GEO)
    rsym = res.check("riemann_symmetries", EPS_GEO)
    bianchi = res.check("first_bianchi", EPS_GEO)
    bianchi2 = res.check("second_bianchi", EPS_GEO)
    ricci = res.check("ricci_symmetry", EPS_GEO)
    ident = res.check("ricci_identity", EPS_GEO)
    oracle = res.check("finite_difference_oracle", EPS_ORACLE)
    flat_like = name in ("flat", "rotated")
    zero = res.check("flat_exact_zero", 0.0) if flat_like else None
    v = jets.value
    for x in sample_points(rng, n):
        geo = Geometry(tetrad, x, 3)
        G = geo.christoffel
        scale_g = max(1.0, np.abs(v(G)).max())
        sym.add(np.abs(v(G) - np.swapaxes(v(G), 0, 1)).max() / scale_g)
        compat.add(np.abs(v(covariant_derivative(geo.g, "ll", G))).max())
        R = v(geo.riemann_lowered)
        sc = max(1.0, np.abs(R).max())
        rsym.add(max(
            np.abs(R + np.swapaxes(R, 2, 3)).max(),
            np.abs(R + np.swapaxes(R, 0, 1)).max(),
            np.abs(R - np.transpose(R, (2, 3, 0, 1))).max(),
        ) / sc)
        bianchi.add(np.abs(R + np.transpose(R, (0, 2, 3, 1)) + np.transpose(R, (0, 3, 1, 2))).max() / sc)
        DR = v(covariant_derivative(geo.riemann, "lllu", G))  # [l, m, n, k, r]
        cyc = DR + np.transpose(DR, (0, 4, 1, 3, 2)) + np.transpose(DR, (0, 2, 4, 3, 1))
        bianchi2.add(np.abs(cyc).max() / max(1.0, np.abs(DR).max()))
        Ric = v(geo.ricci)
        ricci.add(np.abs(Ric - Ric.T).max() / sc)
        # [nabla_m, nabla_n] a_r = -R_{r m n}^l a_l
        a = np.stack([f.jet(x, 3) for f in random_covector(rng)])
        a = np.real(a)
        dda = covariant_derivative(covariant_derivative(a, "l", G), "ll", G)  # [r, m, n] = nabla_n nabla_m a_r
        lhs = v(dda)
        lhs = np.transpose(lhs, (0, 2, 1)) - lhs
        rhs = -np.einsum("rmnl,l->rmn", v(geo.riemann), v(a))
        ident.add(np.abs(lhs - rhs).max() / max(1.0, np.abs(lhs).max()))
        oracle.add(max(
            oracles.relative_error(oracles.christoffel_fd(tetrad, x), v(G)),
            oracles.relative_error(oracles.riemann_fd(tetrad, x), v(geo.riemann), floor=RIEMANN_FLOOR),
        ))
        if zero is not None:
            zero.add(max(np.abs(v(G)).max(), np.abs(v(geo.riemann)).max()))
    return res


# calculus ---------------------------------------------------------------

def calculus_suite(tetrad: TetradField, seed=0, n=100, name="calculus", diffeo=DEFAULT_DIFFEO) -> SuiteResult:
    rng = rng_for(seed, "calculus", name)
    res = SuiteResult("calculus", params={"preset": name, "points": n})
    two = res.check("two_path_upsilon", EPS_FIELD)
    de = res.check("D_tetrad_basis", EPS_FIELD)
    dl = res.check("D_volume_form", EPS_FIELD)
    comm = res.check("upsilon_commutator", EPS_FIELD)
    th4 = res.check("B_transformation", EPS_FIELD)
    th2 = res.check("pullback_covector_law", EPS_FIELD)
    leib = res.check("leibniz", EPS_FIELD)
    props = res.check("D_property_list", EPS_FIELD)
    rot = as_spin_rotated(tetrad)
    pulled = PulledBackTetrad(tetrad, diffeo)
    ell = Multivector.blade(15)
    for i, x in enumerate(sample_points(rng, n)):
        geo = Geometry(tetrad, x, 2)
        B = b_field(geo)
        U = random_form(rng).jet(x, 2)
        V = random_form(rng).jet(x, 2)
        mu = int(rng.integers(4))
        fast = upsilon(geo, mu, U, B).value()
        two.add(rel(fast, upsilon_coordinate(geo, mu, U, 1).value()))
        a = i % 4
        ref = commutator(B[mu], as_jet(geo, E[a])).value()
        de.add(rel(upsilon_coordinate(geo, mu, E[a], 1).value(), ref))
        de.add(d_op(geo, mu, E[a]).value().norm())
        dl.add(upsilon_coordinate(geo, mu, ell, 1).value().norm())
        dl.add(upsilon(geo, mu, ell, B).value().norm())
        nu, lam = int(rng.integers(4)), int(rng.integers(4))
        chk = upsilon_commutator_check(geo, mu, nu, lam)
        comm.add(chk["residual"] / max(1.0, chk["lhs"].norm()))
        th4.add(b_transformation_check(rot, x, 2))
        if i % 10 == 0:
            th2.add(pullback_covector_check(tetrad, pulled, x * 0.5, random_form(rng, degree=1)))
        # Leibniz on both Upsilon paths
        lhs = upsilon(geo, mu, U * V, B).value()
        rhs = (upsilon(geo, mu, U, B) * V + U * upsilon(geo, mu, V, B)).value()
        leib.add(rel(lhs, rhs))
        if i % 4 == 0:
            lhs = upsilon_coordinate(geo, mu, U * V, 1).value()
            rhs = upsilon_coordinate(geo, mu, U, 1).value() * V.value() + U.value() * upsilon_coordinate(geo, mu, V, 1).value()
            leib.add(rel(lhs, rhs))
        DU = d_op(geo, mu, U)
        props.add(rel(d_op(geo, nu, DU).value(), d_op(geo, mu, d_op(geo, nu, U)).value()))
        props.add(rel(d_op(geo, mu, U.star()).value(), DU.star().value()))
        props.add(rel(d_op(geo, mu, U.dagger()).value(), DU.dagger().value()))
        props.add(abs(jets.value(jets.deriv(U.trace(), mu)) - DU.value().trace()))
        sp = (U.dagger() * V).trace()
        pair = (DU.dagger() * V + U.dagger() * d_op(geo, mu, V)).value().trace()
        props.add(abs(jets.value(jets.deriv(sp, mu)) - pair) / max(1.0, abs(pair)))
    return res


# field equations ----------------------------------------------------

def tmp_suite(tetrad: TetradField, k: int, seed=0, n=100, name="equations", m=0.7) -> SuiteResult:
    rng = rng_for(seed, "tmp", name, k)
    res = SuiteResult("tmp", params={"preset": name, "k": k, "points": n})
    ident = res.check("conservation_identity", EPS_FIELD)
    trl = res.check("conservation_identity_traceless", EPS_FIELD)
    frame = ideal_basis(k)
    for x in sample_points(rng, n):
        geo = Geometry(tetrad, x, 1)
        psi = random_wave(rng, k).jet(x, 1)
        A = [a.jet(x, 1) for a in random_potential(rng, k)]
        lhs, rhs = conservation_identity(geo, psi, A, m)
        ident.add((lhs - rhs).norm())
        lhs, rhs = conservation_identity(geo, psi, A, m, frame, traceless=True)
        trl.add((lhs - rhs).norm())
    return res


def ym_suite(tetrad: TetradField, k: int, seed=0, n=100, name="equations") -> SuiteResult:
    rng = rng_for(seed, "ym", name, k)
    res = SuiteResult("ym", params={"preset": name, "k": k, "points": n})
    th7 = res.check("ym_consistency", 1e-7)
    for x in sample_points(rng, n):
        geo = Geometry(tetrad, x, 3)
        A = [a.jet(x, 3) for a in random_potential(rng, k, degree=2, scale=0.3)]
        th7.add(ym_consistency_residual(geo, A))
    return res


def _gauge_generator(rng, k):
    lb = lie_generators(k)
    return combine([random_analytic(rng, 2, 0.4, complex_=False) for _ in lb.taus], lb.taus)


def gauge_suite(tetrad: TetradField, k: int, seed=0, n=100, name="equations", m=0.7) -> SuiteResult:
    rng = rng_for(seed, "gauge", name, k)
    res = SuiteResult("gauge", params={"preset": name, "k": k, "points": n})
    om = res.check("unitary_dirac_covariance", EPS_FIELD)
    ff = res.check("unitary_field_strength", EPS_FIELD)
    jj = res.check("unitary_current", EPS_FIELD)
    lag = res.check("lagrangian_invariance", EPS_FIELD)
    sp_alg = res.check("spin_covariance_algebraic", EPS_FIELD)
    sp_e2e = res.check("spin_covariance_rotated_frame", EPS_FIELD)
    frame = ideal_basis(k)
    rot = as_spin_rotated(tetrad)
    for x in sample_points(rng, n):
        geo = Geometry(tetrad, x, 1)
        psi_f, A_f = random_wave(rng, k), random_potential(rng, k)
        psi = psi_f.jet(x, 1)
        A = [a.jet(x, 1) for a in A_f]
        U = unitary_field(geo, _gauge_generator(rng, k).jet(x, 1))
        omega = dirac_residual(geo, frame, psi, A, m)
        psi_t, A_t = gauge_transform_unitary(geo, psi, A, U)
        omega_t = dirac_residual(geo, frame, psi_t, A_t, m)
        om.add(rel(omega_t.value(), (omega * U).value()))
        Ui = U.dagger()
        F, F_t = field_strength(geo, A), field_strength(geo, A_t)
        ff.add(max(rel(F_t[a][b].value(), (Ui * F[a][b] * U).value()) for a in range(4) for b in range(4)))
        J, J_t = current(geo, psi), current(geo, psi_t)
        jj.add(max(rel(J_t[a].value(), (Ui * J[a] * U).value()) for a in range(4)))
        L0 = lagrangian_density(geo, psi, A, m)
        L1 = lagrangian_density(geo, psi_t, A_t, m)
        lag.add(max(abs(L1 - L0), abs(L0.imag)) / max(1.0, abs(L0)))
        Sx = mv_spin_field(rng, geo, x)
        _, _, _, chk = gauge_transform_spin(geo, psi, A, Sx, m)
        sp_alg.add(rel(chk.value(), (omega * Sx).value()))
        sp_e2e.add(spin_covariance_check(rot, x, frame, psi_f, A_f, m) / max(1.0, omega.value().norm()))
    return res


def mv_spin_field(rng, geo: Geometry, x) -> Multivector:
    """Jet of a position-dependent Spin element ``exp(U(x))``, U a random 2-form field."""
    gen = random_form(rng, degree=2, scale=0.3, grades=(2,))
    U = Multivector(np.real(gen.jet(x, geo.order).coeffs))
    from .algebra import mv_exp

    return mv_exp(U)


def bridge_suite(tetrad: TetradField, k: int, seed=0, n=100, name="equations", m=0.7) -> SuiteResult:
    rng = rng_for(seed, "bridge", name, k)
    res = SuiteResult("bridge", params={"preset": name, "k": k, "points": n})
    br = res.check("column_vs_matrix", 1e-9)
    frame = ideal_basis(k)
    for x in sample_points(rng, n):
        geo = Geometry(tetrad, x, 1)
        psi = random_wave(rng, k).jet(x, 1)
        A = [a.jet(x, 1) for a in random_potential(rng, k)]
        B = b_field(geo)
        omega = dirac_residual(geo, frame, psi, A, m, B)
        col = column(frame, omega.value(), 1e-9)
        mat = dirac_operator_matrix(frame, jets.value(geo.dual), A, B, m, frame.coords(psi))
        br.add(np.abs(col - mat).max() / max(1.0, np.abs(col).max()))
    return res


def fixture_suite(m=0.9, n=10, seed=0) -> SuiteResult:
    """Rest-frame solution on the flat frame: tensor, column and even pictures."""
    rng = rng_for(seed, "fixture")
    res = SuiteResult("fixture", params={"points": n, "m": m})
    tens = res.check("rest_frame_tensor", 1e-12)
    col = res.check("rest_frame_column", 1e-12)
    ev = res.check("rest_frame_even", 1e-12)
    flat = tetrad_from_config({"preset": "flat"})
    frame = ideal_basis(1)
    wave, even = rest_frame_wave(m), rest_frame_even(m)
    for x in sample_points(rng, n, radius=2.0):
        geo = Geometry(flat, x, 1)
        B = b_field(geo)
        A = [Multivector.zero(1)] * 4
        psi = wave.jet(x, 1)
        tens.add(dirac_residual(geo, frame, psi, A, m, B).value().norm())
        col.add(np.abs(dirac_operator_matrix(frame, jets.value(geo.dual), A, B, m, frame.coords(psi))).max())
        e_res, i_res, diff = even_equation_equivalence(geo, 1, even.jet(x, 1), None, m)
        ev.add(max(e_res.norm(), i_res.norm(), diff))
        ev.add(rel((even.jet(x, 1) * frame.t).value(), psi.value()))
    return res


def even_suite(tetrad: TetradField, k: int, seed=0, n=100, name="equations", m=0.7) -> SuiteResult:
    if k not in (1, 2):
        raise ValueError("the even-form suite needs k = 1 or k = 2")
    rng = rng_for(seed, "even", name, k)
    res = SuiteResult("even", params={"preset": name, "k": k, "points": n})
    rt = res.check("even_solve_round_trip", 1e-12)
    eq = res.check("even_ideal_agreement", 1e-9)
    frame = ideal_basis(k)
    for x in sample_points(rng, n):
        geo = Geometry(tetrad, x, 1)
        psi_e = random_even(rng, k).jet(x, 1)
        A_e = [a.jet(x, 1) for a in random_even_potential(rng, k)]
        pv = psi_e.value()
        rt.add(rel(even_solve(k, pv * frame.t), pv))
        phi = random_mv(rng) * frame.t
        rt.add(rel(even_solve(k, phi) * frame.t, phi))
        _, _, diff = even_equation_equivalence(geo, k, psi_e, A_e, m)
        eq.add(diff)
    return res


EQUATION_SUITES = {
    "tmp": tmp_suite, "ym": ym_suite, "gauge": gauge_suite, "bridge": bridge_suite, "even": even_suite,
}


def threads() -> int:
    try:
        return max(1, int(os.environ.get("CLIFF13_THREADS", "1")))
    except ValueError:
        return 1


def run_parallel(jobs):
    """Run zero-argument callables, capped by ``CLIFF13_THREADS``; keeps input order."""
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        return list(pool.map(lambda job: job(), jobs))
