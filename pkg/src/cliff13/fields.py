"""Analytic scalar and form fields as small expression trees.

Every field is evaluated to a Taylor jet at a chart point, which yields
exact partial derivatives of any order up to the requested one.  Trees
support substitution of the coordinates, used for pull-backs along an
explicit diffeomorphism.
"""
from __future__ import annotations

from itertools import product as iproduct
from numbers import Number

import numpy as np

from . import jets
from .algebra import BLADE_LABELS, Multivector, blade_mask


class Env(list):
    """Coordinate jets at a point, with a cache of their powers."""

    def __init__(self, x, order: int):
        super().__init__(jets.variable(np.asarray(x, float), mu, order) for mu in range(4))
        self.powers = {}


def _powers(env, mu, top, m):
    cache = getattr(env, "powers", None)
    pw = cache.get(mu) if cache is not None else None
    if pw is None:
        pw = [jets.promote(np.ones((), dtype=float), m)]
    while len(pw) <= top:
        pw.append(jets.mul(pw[-1], env[mu]))
    if cache is not None:
        cache[mu] = pw
    return pw


class ScalarField:
    """Base class; subclasses implement ``_eval(env)`` on coordinate jets."""

    def _eval(self, env):
        raise NotImplementedError

    def jet(self, x, order: int) -> np.ndarray:
        env = Env(x, order)
        return self._eval(env)

    def __call__(self, x):
        return jets.value(self.jet(x, 0))

    def derivatives(self, x):
        """``(value, grad[4], hess[4, 4])`` at ``x``."""
        j = self.jet(x, 2)
        return jets.value(j), jets.gradient(j), jets.hessian(j)

    def substitute(self, coords) -> "ScalarField":
        """``self`` composed with the coordinate map ``x^mu = coords[mu](y)``."""
        return Substituted(self, tuple(coords))

    def __add__(self, other):
        return Add(self, as_field(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Add(self, Neg(as_field(other)))

    def __rsub__(self, other):
        return Add(as_field(other), Neg(self))

    def __neg__(self):
        return Neg(self)

    def __mul__(self, other):
        return Mul(self, as_field(other))

    __rmul__ = __mul__


def as_field(v) -> ScalarField:
    if isinstance(v, ScalarField):
        return v
    if isinstance(v, Number):
        return Const(v)
    raise TypeError(f"cannot use {type(v).__name__} as a scalar field")


class Const(ScalarField):
    def __init__(self, c):
        self.c = c

    def _eval(self, env):
        out = np.zeros(env[0].shape[-1], dtype=np.result_type(self.c, float))
        out[0] = self.c
        return out


class Coord(ScalarField):
    def __init__(self, mu: int):
        self.mu = mu

    def _eval(self, env):
        return env[self.mu]


class Add(ScalarField):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def _eval(self, env):
        return self.a._eval(env) + self.b._eval(env)


class Neg(ScalarField):
    def __init__(self, a):
        self.a = a

    def _eval(self, env):
        return -self.a._eval(env)


class Mul(ScalarField):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def _eval(self, env):
        return jets.mul(self.a._eval(env), self.b._eval(env))


class _Unary(ScalarField):
    fn = None

    def __init__(self, a):
        self.a = as_field(a)

    def _eval(self, env):
        return type(self).fn(self.a._eval(env))


class Exp(_Unary):
    fn = staticmethod(jets.exp)


class Sin(_Unary):
    fn = staticmethod(jets.sin)


class Cos(_Unary):
    fn = staticmethod(jets.cos)


class Poly(ScalarField):
    """``sum c[alpha] x^alpha`` over exponent tuples ``alpha``."""

    def __init__(self, terms: dict):
        self.terms = {tuple(int(e) for e in k): v for k, v in terms.items() if v != 0}

    def _eval(self, env):
        m = env[0].shape[-1]
        if not self.terms:
            return np.zeros(m)
        alphas = np.array(list(self.terms), dtype=np.int64)
        coeffs = np.array(list(self.terms.values()))
        top = int(alphas.max())
        term = None
        for mu in range(4):
            col = np.stack(_powers(env, mu, top, m)[: top + 1])[alphas[:, mu]]  # batched over all terms
            term = col if term is None else jets.mul(term, col)
        return coeffs @ term


class Substituted(ScalarField):
    def __init__(self, f, coords):
        self.f, self.coords = f, coords

    def _eval(self, env):
        return self.f._eval([c._eval(env) for c in self.coords])


X = tuple(Coord(mu) for mu in range(4))


def exp(f):
    return Exp(f)


def sin(f):
    return Sin(f)


def cos(f):
    return Cos(f)


def linear(k, c0=0.0) -> ScalarField:
    """``c0 + k . x``."""
    return Poly({(0, 0, 0, 0): c0, **{tuple(int(i == mu) for i in range(4)): k[mu] for mu in range(4)}})


def random_poly(rng, degree=2, scale=1.0, complex_=False) -> Poly:
    terms = {}
    for alpha in iproduct(range(degree + 1), repeat=4):
        if sum(alpha) <= degree:
            c = rng.normal() * scale / (1 + sum(alpha))
            if complex_:
                c = c + 1j * rng.normal() * scale / (1 + sum(alpha))
            terms[alpha] = c
    return Poly(terms)


def random_analytic(rng, degree=2, scale=1.0, complex_=True) -> ScalarField:
    """Random polynomial times a plane-wave factor ``exp(i k.x)`` (or ``exp(k.x)`` if real)."""
    kvec = rng.normal(size=4) * 0.7
    poly = random_poly(rng, degree, scale, complex_)
    if complex_:
        return poly * Exp(1j * linear(kvec))
    return poly * Exp(0.3 * linear(kvec))


class FormField:
    """Multivector-valued field given by one scalar field per blade."""

    def __init__(self, coeffs: dict):
        self.coeffs = {blade_mask(k): as_field(v) for k, v in coeffs.items()}

    @classmethod
    def constant(cls, U: Multivector) -> "FormField":
        return cls({m: Const(complex(c)) for m, c in enumerate(U.coeffs) if c != 0})

    @classmethod
    def scaled(cls, f: ScalarField, U: Multivector) -> "FormField":
        """``f(x) U`` for a constant form U."""
        return cls({m: f * complex(c) for m, c in enumerate(U.coeffs) if c != 0})

    def _eval(self, env) -> Multivector:
        m = env[0].shape[-1]
        out = np.zeros((16, m), dtype=complex)
        for mask, f in self.coeffs.items():
            out[mask] = f._eval(env)
        return Multivector(out)

    def jet(self, x, order: int) -> Multivector:
        env = Env(x, order)
        return self._eval(env)

    def __call__(self, x) -> Multivector:
        return self.jet(x, 0).value()

    def substitute(self, coords) -> "FormField":
        return FormField({m: f.substitute(coords) for m, f in self.coeffs.items()})

    def __add__(self, other: "FormField") -> "FormField":
        out = dict(self.coeffs)
        for m, f in other.coeffs.items():
            out[m] = out[m] + f if m in out else f
        return FormField(out)

    def __repr__(self):
        return f"FormField({sorted(BLADE_LABELS[m] or '1' for m in self.coeffs)})"


def combine(fields, forms) -> FormField:
    """``sum_n f_n(x) U_n`` for scalar fields and constant forms."""
    out = FormField({})
    for f, U in zip(fields, forms):
        out = out + FormField.scaled(as_field(f), U)
    return out


def random_form(rng, degree=2, scale=1.0, grades=None) -> FormField:
    """Random complex analytic coefficients on the chosen grades (default all)."""
    from .algebra import GRADE

    masks = [m for m in range(16) if grades is None or GRADE[m] in grades]
    return FormField({m: random_analytic(rng, degree, scale) for m in masks})
