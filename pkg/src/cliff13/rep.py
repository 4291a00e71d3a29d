"""Matrix pictures of the algebra on a left ideal: gamma, theta and columns.

Matrices are plain complex arrays of shape (4k, 4k) (or (4k, 4k, M) for
jet-valued input); upper basis index = row.
"""
from __future__ import annotations

import numpy as np

from . import jets
from .algebra import EPS_ALG, E, Multivector, commutator
from .errors import DomainError, RepresentationError
from .ideals import IdealFrame, ideal_basis, require_in_ideal
from .spin import EPS_SPIN, lorentz_matrix


def gamma_map(frame: IdealFrame, U: Multivector) -> np.ndarray:
    """``gamma(U)^K_N = (t_K, U t_N)``."""
    return np.tensordot(frame.blade_gammas, U.coeffs, axes=([0], [0]))


def gamma_generators(frame: IdealFrame) -> np.ndarray:
    """``gamma(e^a)`` for a = 0..3, shape (4, 4k, 4k)."""
    return frame.blade_gammas[[1, 2, 4, 8]]


def theta_map(frame: IdealFrame, V: Multivector, tol=EPS_ALG) -> np.ndarray:
    """``theta(V)^K_N = (t_K, t_N V)``; V must commute with t."""
    r = commutator(V.value(), frame.t).norm()
    if r > tol * max(1.0, V.value().norm()):
        raise DomainError(f"theta needs [V, t] = 0; got residual {r:.3g}", residual=r)
    cols = [frame.coords(tn * V) for tn in frame.basis]
    return np.stack(cols, axis=1)


def column(frame: IdealFrame, omega: Multivector, tol=EPS_ALG) -> np.ndarray:
    """Coordinates ``omega^K`` of a form in the ideal."""
    require_in_ideal(frame, omega, tol)
    return frame.coords(omega)


def reconstruct(frame: IdealFrame, psi) -> Multivector:
    """``psi^K t_K``."""
    psi = np.asarray(psi)
    return Multivector(np.tensordot(frame.basis_matrix, psi, axes=([1], [0])))


def dirac_operator_matrix(frame: IdealFrame, dual, A, B, m: float, psi) -> np.ndarray:
    """Column residual ``gamma^mu (d_mu + theta(A_mu) + gamma(B_mu)) psi + i m psi``.

    ``dual[mu, a] = e^mu_a`` at the point, ``A`` and ``B`` are point values,
    ``psi`` is a jet column of shape (4k, M) with at least first-order data.
    Returns the point value of the residual column.
    """
    psi = np.asarray(psi)
    d = frame.dim
    if psi.shape[0] != d or len(A) != 4 or len(B) != 4:
        raise RepresentationError(f"expected a column of length {d} and four A_mu, B_mu")
    ga = gamma_generators(frame)
    gmu = np.einsum("ma,akn->mkn", np.asarray(dual), ga)
    psi0 = jets.value(psi)
    out = 1j * m * psi0
    for mu in range(4):
        dpsi = jets.value(jets.deriv(psi, mu))
        inner = dpsi + theta_map(frame, A[mu].value()) @ psi0 + gamma_map(frame, B[mu].value()) @ psi0
        out = out + gmu[mu] @ inner
    return out


def gamma_of_connection(frame: IdealFrame, b) -> np.ndarray:
    """``(1/4) b_{ab} [gamma^a, gamma^b]`` for an antisymmetric 4x4 ``b``."""
    ga = gamma_generators(frame)
    out = np.zeros((frame.dim, frame.dim), dtype=complex)
    for a in range(4):
        for c in range(4):
            out += 0.25 * b[a, c] * (ga[a] @ ga[c] - ga[c] @ ga[a])
    return out


def spin_conjugation_matrix(frame: IdealFrame, S, tol=EPS_SPIN):
    """``R = gamma(S)`` plus the residual of ``R^{-1} gamma^a R = p^a_b gamma^b``."""
    Sv = S.value if not isinstance(S, Multivector) else S
    R = gamma_map(frame, Sv.value())
    Rinv = gamma_map(frame, Sv.value().star())
    P = lorentz_matrix(Sv, tol)
    ga = gamma_generators(frame)
    lhs = np.einsum("ij,ajk,kl->ail", Rinv, ga, R)
    rhs = np.einsum("ab,bkl->akl", P, ga)
    return R, {
        "conjugation": float(np.abs(lhs - rhs).max()),
        "inverse": float(np.abs(R @ Rinv - np.eye(frame.dim)).max()),
    }


def clifford_residual(gammas, ginv) -> float:
    """Max deviation of ``g^mu g^nu + g^nu g^mu`` from ``2 g^{mu nu} 1``."""
    n = gammas.shape[-1]
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            ac = gammas[mu] @ gammas[nu] + gammas[nu] @ gammas[mu]
            worst = max(worst, float(np.abs(ac - 2 * ginv[mu, nu] * np.eye(n)).max()))
    return worst


def gamma_fixture_dict() -> dict:
    """The k=1 generator matrices in the shipped fixture layout."""
    ga = gamma_generators(ideal_basis(1))
    out = {}
    for a in range(4):
        out[str(a)] = [[[_num(z.real), _num(z.imag)] for z in row] for row in ga[a]]
    return {"k": 1, "layout": "gamma[a][row][col] = [re, im]", "gamma": out}


def _num(v: float):
    v = float(v) + 0.0
    return int(v) if v.is_integer() else v


def dump_fixture_json(obj: dict) -> str:
    """Serialize the gamma fixture with one matrix row per line."""
    lines = ["{", f'  "k": {obj["k"]},', f'  "layout": "{obj["layout"]}",', '  "gamma": {']
    keys = list(obj["gamma"])
    for i, a in enumerate(keys):
        lines.append(f'    "{a}": [')
        rows = obj["gamma"][a]
        for j, row in enumerate(rows):
            cells = ", ".join(f"[{re}, {im}]" for re, im in row)
            lines.append(f"      [{cells}]" + ("," if j < len(rows) - 1 else ""))
        lines.append("    ]" + ("," if i < len(keys) - 1 else ""))
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"
