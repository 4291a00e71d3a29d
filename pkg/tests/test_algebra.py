import json

import numpy as np
import pytest
from hypothesis import given

from cliff13.algebra import (
    BLADE_LABELS, E, E_LOWER, GRADE, H, ONE, Multivector, anti_hermitian_basis, blade_mask, commutator,
    contract_generators, grade_project, hermitian_conj, isclose, mv_exp, scalar_product, star_conj, trace, wedge,
)
from cliff13.errors import ConvergenceError, InvalidGradeError

from conftest import multivectors

B = Multivector.blade


def test_blade_labels_roundtrip():
    for m, lab in enumerate(BLADE_LABELS):
        assert blade_mask(lab) == m
    assert blade_mask("10") == blade_mask("01") == 3
    assert blade_mask((0, 2)) == 5
    with pytest.raises(ValueError):
        blade_mask("00")
    with pytest.raises(ValueError):
        blade_mask(16)


@pytest.mark.parametrize(
    "a, b, expected",
    [("0", "0", Multivector.zero()), ("0", "1", B("01")), ("01", "23", B("0123")), ("01", "12", Multivector.zero())],
)
def test_wedge_examples(a, b, expected):
    assert isclose(wedge(B(a), B(b)), expected, 0.0)


def test_wedge_sign_on_reordering():
    assert isclose(B("1") ^ B("0"), -B("01"), 0.0)
    assert isclose(B("2") ^ B("013"), B("0123"), 0.0)


@pytest.mark.parametrize(
    "a, b, expected",
    [("0", "0", ONE), ("1", "1", -ONE), ("0", "1", B("01")), ("01", "01", ONE), ("12", "12", -ONE)],
)
def test_central_product_examples(a, b, expected):
    assert isclose(B(a) * B(b), expected, 0.0)


def test_clifford_relation_exact():
    eta = np.diag([1, -1, -1, -1])
    for a in range(4):
        for b in range(4):
            assert np.array_equal((E[a] * E[b] + E[b] * E[a]).coeffs, (2 * eta[a, b] * ONE).coeffs)


def test_product_of_distinct_generators_is_wedge():
    assert isclose(E[0] * E[1] * E[3], B("013"), 0.0)


def test_grade_projection_examples():
    U = ONE + B("01")
    assert isclose(grade_project(U, 0), ONE, 0.0)
    assert isclose(U.grade(2), B("01"), 0.0)
    for bad in (-1, 5, 2.5):
        with pytest.raises(InvalidGradeError):
            U.grade(bad)


@given(multivectors())
def test_grades_partition(U):
    total = Multivector.zero()
    for k in range(5):
        total = total + U.grade(k)
    assert isclose(total, U, 0.0)
    assert isclose(U.even() + U.odd(), U, 0.0)


def test_star_examples():
    assert isclose(B("012").star(), E[2] * E[1] * E[0], 0.0)
    U = B("01", 2.0) + B("123", -1.5)
    assert isclose(star_conj(U), -U, 0.0)
    assert isclose(Multivector.scalar(1j).star(), Multivector.scalar(-1j), 0.0)


def test_dagger_examples():
    assert isclose(hermitian_conj(E[0]), E[0], 0.0)
    assert isclose(E[1].dagger(), -E[1], 0.0)
    assert isclose(H * E[1] * H, -E[1], 0.0)
    assert isclose(Multivector.scalar(1j).dagger(), Multivector.scalar(-1j), 0.0)


def test_trace_examples():
    assert trace(ONE) == 1
    assert trace(B("12")) == 0


@given(multivectors(), multivectors())
def test_trace_cyclic(U, V):
    assert abs((U * V - V * U).trace()) <= 1e-12 * max(1.0, (U * V).norm())


@given(multivectors(), multivectors(), multivectors())
def test_associativity(U, V, W):
    assert isclose((U * V) * W, U * (V * W))
    assert isclose((U ^ V) ^ W, U ^ (V ^ W))


@given(multivectors(), multivectors())
def test_conjugations_reverse_products(U, V):
    assert isclose((U * V).star(), V.star() * U.star())
    assert isclose((U * V).dagger(), V.dagger() * U.dagger())
    assert isclose(U.star().star(), U, 0.0)
    assert isclose(U.dagger().dagger(), U)


def test_scalar_product_examples():
    assert scalar_product(B("12"), B("12")) == pytest.approx(1.0)
    assert scalar_product(Multivector.zero(), B("3")) == 0


@given(multivectors(), multivectors())
def test_scalar_product_hermitian(U, V):
    assert scalar_product(U, V) == pytest.approx(np.conj(scalar_product(V, U)), abs=1e-10)
    assert scalar_product(U, U).real >= -1e-12


def test_anti_hermitian_basis():
    T = anti_hermitian_basis()
    assert isclose(T[0], Multivector.scalar(1j), 0.0)
    G = np.array([[scalar_product(a, b) for b in T] for a in T])
    assert np.allclose(G, np.eye(16), atol=0)
    for t in T:
        assert isclose(t.dagger() + t, Multivector.zero(), 0.0)
    real = np.array([np.concatenate([t.coeffs.real, t.coeffs.imag]) for t in T])
    assert np.linalg.matrix_rank(real) == 16


@pytest.mark.parametrize("U, factor", [(ONE, 4), (E[1], -2), (B("12"), 0), (B("012"), 2), (B("0123"), -4)])
def test_generator_contraction_examples(U, factor):
    assert isclose(contract_generators(U), factor * U, 0.0)


def test_lower_generators():
    for a in range(4):
        assert isclose(E[a] * E_LOWER[a], ONE, 0.0)


def test_commutator_antisymmetric():
    assert isclose(commutator(E[1], E[2]), 2 * B("12"), 0.0)


def test_json_roundtrip():
    U = Multivector(np.arange(16) + 1j * np.arange(16)[::-1])
    data = json.loads(json.dumps(U.to_json()))
    assert set(data) == set(BLADE_LABELS)
    assert isclose(Multivector.from_json(data), U, 0.0)
    assert isclose(Multivector.from_json({"12": 2}), B("12", 2), 0.0)


def test_immutable_and_shape_checks():
    U = E[0]
    with pytest.raises(AttributeError):
        U.coeffs = np.zeros(16)
    with pytest.raises(ValueError):
        U.coeffs[0] = 1
    with pytest.raises(ValueError):
        Multivector(np.zeros(15))


def test_jet_arithmetic_mixes_with_points():
    J = Multivector.scalar(2.0, order=1)
    assert J.is_jet and J.jet_order == 1
    out = J * E[1] + E[0]
    assert out.is_jet
    assert isclose(out.value(), 2 * E[1] + E[0], 0.0)
    with pytest.raises(ValueError):
        E[0].d(0)


def test_exp_of_rotation_generator():
    th = 0.7
    S = mv_exp(B("12", th))
    assert isclose(S, np.cos(th) * ONE + np.sin(th) * B("12"))
    with pytest.raises(ConvergenceError):
        mv_exp(B("", 50.0), n_max=5)


def test_grade_table_consistency():
    assert list(np.bincount(GRADE)) == [1, 4, 6, 4, 1]
