"""Tetrad fields and the Riemannian data they induce, on Taylor jets.

Index layout of the arrays (jet axis always last):

* ``E[mu, a]``   = e_mu^a          ``dual[mu, a]`` = e^mu_a
* ``christoffel[mu, nu, lam]``     = Gamma_{mu nu}^lam
* ``riemann[lam, mu, nu, kap]``    = R_{lam mu nu}^kap, i.e. the usual
  R^kap_{lam mu nu}
* ``ricci[nu, rho]`` = R^mu_{nu mu rho}, ``scalar`` = g^{rho nu} R_{rho nu}
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import jets
from .algebra import Multivector
from .errors import DegeneracyError
from .fields import Const, Env, Exp, Poly, ScalarField, as_field, linear, random_poly

EPS_GEO = 1e-9
ETA = np.diag([1.0, -1.0, -1.0, -1.0])
_ETA_DIAG = np.array([1.0, -1.0, -1.0, -1.0])
DET_TOL = 1e-12


class TetradField:
    """Base class: ``jet(x, order)`` returns e_mu^a as a real (4, 4, M) jet array."""

    name = "tetrad"

    def jet(self, x, order: int) -> np.ndarray:
        env = Env(x, order)
        return self._eval(env)

    def _eval(self, env):
        raise NotImplementedError

    def __call__(self, x) -> np.ndarray:
        return jets.value(self.jet(x, 0))


class ExprTetrad(TetradField):
    """Tetrad with one scalar expression per entry ``e[mu][a]``."""

    def __init__(self, entries, name="tetrad"):
        self.e = [[as_field(entries[mu][a]) for a in range(4)] for mu in range(4)]
        self.name = name

    def _eval(self, env):
        return np.array([[np.real(self.e[mu][a]._eval(env)) for a in range(4)] for mu in range(4)])


class SpinRotatedTetrad(TetradField):
    """``e_mu^a -> p^a_b(x) e_mu^b`` with ``S(x)^{-1} e^a S(x) = p^a_b e^b``."""

    def __init__(self, base: TetradField, spin_field, name="spin_rotated"):
        self.base = base
        self.spin_field = spin_field  # callable env -> jet Multivector in Spin
        self.name = name

    def _eval(self, env):
        from .spin import lorentz_field

        E = self.base._eval(env)
        p = lorentz_field(self.spin_field(env))
        return jets.einsum("ab,mb->ma", p, E)


class PulledBackTetrad(TetradField):
    """Tetrad in new coordinates y with ``x = phi(y)``: (dx^nu/dy^mu) e_nu^a(phi(y))."""

    def __init__(self, base: TetradField, coords, name="pullback"):
        self.base = base
        self.coords = tuple(as_field(c) for c in coords)
        self.name = name

    def jet(self, x, order: int):
        env = Env(x, order + 1)
        phi = [np.real(c._eval(env)) for c in self.coords]
        jac = np.array([[jets.deriv(phi[nu], mu) for nu in range(4)] for mu in range(4)])
        E = self.base._eval(phi)
        return jets.truncate(jets.einsum("mn,na->ma", jac, E), order)

    def point_map(self, y):
        return np.array([c(y) for c in self.coords]).real

    def jacobian(self, y):
        """``J[mu, nu] = d x^nu / d y^mu`` at ``y``."""
        env = Env(y, 1)
        phi = [np.real(c._eval(env)) for c in self.coords]
        return np.array([[jets.value(jets.deriv(phi[nu], mu)) for nu in range(4)] for mu in range(4)])


# presets ---------------------------------------------------------------

def flat() -> ExprTetrad:
    return ExprTetrad([[Const(float(mu == a)) for a in range(4)] for mu in range(4)], "flat")


def conformal(omega: ScalarField, name="conformal") -> ExprTetrad:
    z = Const(0.0)
    return ExprTetrad([[omega if mu == a else z for a in range(4)] for mu in range(4)], name)


def conformal_exp(kappa=(0.3, 0.2, -0.1, 0.15)) -> ExprTetrad:
    return conformal(Exp(linear(kappa)))


def rotated(P) -> ExprTetrad:
    """Constant Lorentz mixing ``e_mu^a = P^a_mu``."""
    P = np.asarray(P, float)
    return ExprTetrad([[Const(P[a, mu]) for a in range(4)] for mu in range(4)], "rotated")


def perturbed(rng, eps=0.05, degree=2) -> ExprTetrad:
    return ExprTetrad(
        [[float(mu == a) + random_poly(rng, degree, eps) for a in range(4)] for mu in range(4)], "perturbed"
    )


def spin_rotated(base: TetradField, generator) -> SpinRotatedTetrad:
    """``generator`` is a FormField of 2-forms; S(x) is its exterior exponent."""
    from .spin import exterior_exp

    return SpinRotatedTetrad(base, lambda env: exterior_exp(generator._eval(env)).value)


# geometry on jets ----------------------------------------------------

@dataclass
class GeometryPoint:
    """Point values of the induced geometry (plain arrays)."""

    x: np.ndarray
    tetrad: np.ndarray
    dual: np.ndarray
    g: np.ndarray
    ginv: np.ndarray
    sqrt_neg_g: float
    christoffel: np.ndarray
    riemann: np.ndarray | None = None
    ricci: np.ndarray | None = None
    scalar: float | None = None


class Geometry:
    """All derived quantities of a tetrad at one point, as jets of a fixed order.

    A quantity needing d derivatives of the tetrad is exact to order
    ``order - d``.
    """

    def __init__(self, tetrad: TetradField, x, order: int = 2):
        self.tetrad = tetrad
        self.x = np.asarray(x, float)
        self.order = order
        self.E = np.real(tetrad.jet(self.x, order))
        d = float(np.linalg.det(jets.value(self.E)))
        if abs(d) < DET_TOL:
            raise DegeneracyError(f"degenerate tetrad at x={self.x.tolist()}: det = {d:.3g}", det=d, point=self.x)
        self.det_e = d

    @property
    def m(self) -> int:
        return self.E.shape[-1]

    @cached_property
    def dual(self):
        inv = jets.inv_matrix(self.E)  # inv[a, mu] = e^mu_a
        return np.swapaxes(inv, 0, 1)

    @cached_property
    def g(self):
        return jets.einsum("ma,na->mn", self.E * _ETA_DIAG[None, :, None], self.E)

    @cached_property
    def ginv(self):
        return jets.einsum("ma,na->mn", self.dual * _ETA_DIAG[None, :, None], self.dual)

    @cached_property
    def sqrt_neg_g(self):
        det = jets.det(self.E)
        return det if jets.value(det) > 0 else -det

    @cached_property
    def dg(self):
        """``dg[rho, mu, nu] = d_rho g_{mu nu}``."""
        return np.stack([jets.deriv(self.g, r) for r in range(4)])

    @cached_property
    def christoffel(self):
        dg = self.dg
        # t[mu, nu, kap] = d_mu g_{nu kap} + d_nu g_{mu kap} - d_kap g_{mu nu}
        t = dg + np.swapaxes(dg, 0, 1) - np.transpose(dg, (1, 2, 0, 3))
        return 0.5 * jets.einsum("lk,mnk->mnl", self.ginv, t)

    @cached_property
    def dchristoffel(self):
        """``[rho, mu, nu, lam] = d_rho Gamma_{mu nu}^lam``."""
        return np.stack([jets.deriv(self.christoffel, r) for r in range(4)])

    @cached_property
    def riemann(self):
        G = self.christoffel
        dG = self.dchristoffel
        # R_{lam mu nu}^kap
        lin = np.einsum("mnlk...->lmnk...", dG) - np.einsum("nmlk...->lmnk...", dG)
        quad = jets.einsum("mek,nle->lmnk", G, G)
        return lin + quad - np.einsum("lnmk...->lmnk...", quad)

    @cached_property
    def ricci(self):
        return np.einsum("nmrm...->nr...", self.riemann)

    @cached_property
    def scalar(self):
        return jets.einsum("rn,rn->", self.ginv, self.ricci)

    @cached_property
    def riemann_lowered(self):
        """``R_{kap lam mu nu} := g_{kap sig} R_{lam mu nu}^sig``."""
        return jets.einsum("ks,lmns->klmn", self.g, self.riemann)

    def point(self, curvature=True) -> GeometryPoint:
        v = jets.value
        gp = GeometryPoint(
            self.x, v(self.E), v(self.dual), v(self.g), v(self.ginv), float(v(self.sqrt_neg_g)), v(self.christoffel)
        )
        if curvature and self.order >= 2:
            gp.riemann, gp.ricci, gp.scalar = v(self.riemann), v(self.ricci), float(v(self.scalar))
        return gp

    # form helpers
    def dx(self, mu: int) -> Multivector:
        """``dx^mu = e^mu_a e^a`` as a jet multivector."""
        out = np.zeros((16, self.m))
        for a in range(4):
            out[1 << a] = self.dual[mu, a]
        return Multivector(out)

    def coframe(self, mu: int) -> Multivector:
        """The 1-form with tetrad components e_mu^a lowered: ``e_mu^a eta_ab e^b``... i.e. g_{mu nu} dx^nu."""
        out = np.zeros((16, self.m))
        for a in range(4):
            out[1 << a] = self.E[mu, a] * _ETA_DIAG[a]
        return Multivector(out)


def metric_at(tetrad: TetradField, x) -> GeometryPoint:
    return Geometry(tetrad, x, 1).point(curvature=False)


def connection_at(tetrad: TetradField, x) -> np.ndarray:
    return Geometry(tetrad, x, 1).point(curvature=False).christoffel


def curvature_at(tetrad: TetradField, x) -> dict:
    p = Geometry(tetrad, x, 2).point()
    return {"riemann": p.riemann, "ricci": p.ricci, "scalar": p.scalar}


def signature_ok(g: np.ndarray) -> bool:
    ev = np.linalg.eigvalsh(g)
    return bool(g[0, 0] > 0 and np.linalg.det(g) < 0 and (ev > 0).sum() == 1 and (ev < 0).sum() == 3)


def covariant_derivative(T, kinds: str, christoffel):
    """``nabla_mu`` of a jet tensor with index kinds like ``"ul"`` (upper/lower).

    The new index is appended last, before the jet axis.
    """
    T = np.asarray(T)
    r = len(kinds)
    if T.ndim != r + 1:
        raise ValueError(f"tensor rank {T.ndim - 1} does not match kinds {kinds!r}")
    out = np.stack([jets.deriv(T, mu) for mu in range(4)], axis=r)
    letters = "abcdefgh"[:r]
    for i, kind in enumerate(kinds):
        src = letters[:i] + "x" + letters[i + 1:]
        dst = letters[:i] + "y" + letters[i + 1:] + "z"
        if kind == "u":
            out = out + jets.einsum(f"xzy,{src}->{dst}", christoffel, T)
        elif kind == "l":
            out = out - jets.einsum(f"yzx,{src}->{dst}", christoffel, T)
        else:
            raise ValueError(f"index kind must be 'u' or 'l', got {kind!r}")
    return out


# configs -----------------------------------------------------------------

DEFAULT_ROTATION = {"01": 0.4, "12": 0.7, "23": -0.3}
DEFAULT_SPIN_GENERATOR = {
    "12": [[[0, 0, 0, 0], 0.3], [[1, 0, 0, 0], 0.4], [[0, 1, 0, 1], -0.2]],
    "01": [[[0, 0, 1, 0], 0.1], [[2, 0, 0, 0], 0.05]],
    "23": [[[0, 0, 0, 1], 0.15], [[0, 1, 1, 0], 0.1]],
}


def _poly_from_terms(terms) -> Poly:
    return Poly({tuple(alpha): float(c) for alpha, c in terms})


def tetrad_from_config(cfg: dict) -> TetradField:
    """Build a preset from ``{"preset": name, "params": {...}}``."""
    from .fields import FormField
    from .spin import exp_series, lorentz_matrix

    name = cfg.get("preset", "flat")
    params = cfg.get("params", {}) or {}
    if name == "flat":
        return flat()
    if name == "conformal":
        if "poly" in params:
            return conformal(_poly_from_terms(params["poly"]))
        return conformal_exp(params.get("kappa", (0.3, 0.2, -0.1, 0.15)))
    if name == "rotated":
        P = params.get("matrix")
        if P is None:
            U = Multivector.from_json(params.get("generator", DEFAULT_ROTATION))
            P = lorentz_matrix(exp_series(U))
        return rotated(P)
    if name == "spin_rotated":
        base = tetrad_from_config(params.get("base", {"preset": "flat"}))
        gen = params.get("generator", DEFAULT_SPIN_GENERATOR)
        return spin_rotated(base, FormField({lab: _poly_from_terms(t) for lab, t in gen.items()}))
    if name == "perturbed":
        rng = np.random.default_rng(params.get("seed", 0))
        return perturbed(rng, params.get("eps", 0.05), params.get("degree", 2))
    raise ValueError(f"unknown tetrad preset {name!r}")


PRESET_NAMES = ("flat", "conformal", "rotated", "spin_rotated", "perturbed")


def sample_points(rng, n: int, radius: float = 0.5) -> np.ndarray:
    return rng.uniform(-radius, radius, size=(n, 4))


def _spin_jet(self, x, order: int) -> Multivector:
    env = Env(x, order)
    return self.spin_field(env)


SpinRotatedTetrad.spin_jet = _spin_jet
