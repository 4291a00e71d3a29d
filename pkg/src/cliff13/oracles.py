"""Finite-difference reference values, independent of the jet machinery.

Only point values of the tetrad are used (``tetrad(x)``), so these serve
as an oracle for the exact-derivative path.
"""
from __future__ import annotations

import numpy as np

H_DEFAULT = 1e-4
ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def metric_value(tetrad, x):
    E = np.real(tetrad(np.asarray(x, float)))
    return E @ ETA @ E.T


def _shift(x, mu, h):
    y = np.array(x, float)
    y[mu] += h
    return y


def metric_derivatives_fd(tetrad, x, h=H_DEFAULT):
    """Central differences: ``dg[r, m, n]`` and ``d2g[r, s, m, n]``."""
    g = lambda y: metric_value(tetrad, y)
    g0 = g(x)
    dg = np.zeros((4, 4, 4))
    d2g = np.zeros((4, 4, 4, 4))
    for r in range(4):
        gp, gm = g(_shift(x, r, h)), g(_shift(x, r, -h))
        dg[r] = (gp - gm) / (2 * h)
        d2g[r, r] = (gp - 2 * g0 + gm) / h**2
        for s in range(r + 1, 4):
            pp = g(_shift(_shift(x, r, h), s, h))
            pm = g(_shift(_shift(x, r, h), s, -h))
            mp = g(_shift(_shift(x, r, -h), s, h))
            mm = g(_shift(_shift(x, r, -h), s, -h))
            d2g[r, s] = d2g[s, r] = (pp - pm - mp + mm) / (4 * h**2)
    return g0, dg, d2g


def christoffel_fd(tetrad, x, h=H_DEFAULT):
    g0, dg, _ = metric_derivatives_fd(tetrad, x, h)
    return _christoffel(np.linalg.inv(g0), dg)


def _christoffel(ginv, dg):
    t = dg + np.swapaxes(dg, 0, 1) - np.transpose(dg, (1, 2, 0))
    return 0.5 * np.einsum("lk,mnk->mnl", ginv, t)


def riemann_fd(tetrad, x, h=H_DEFAULT):
    """``R_{lam mu nu}^kap`` from first and second differences of the metric."""
    g0, dg, d2g = metric_derivatives_fd(tetrad, x, h)
    ginv = np.linalg.inv(g0)
    G = _christoffel(ginv, dg)
    # d_r Gamma: product rule on ginv and the bracket
    t = dg + np.swapaxes(dg, 0, 1) - np.transpose(dg, (1, 2, 0))
    dt = d2g + np.swapaxes(d2g, 1, 2) - np.transpose(d2g, (0, 2, 3, 1))
    dginv = -np.einsum("ab,rbc,cd->rad", ginv, dg, ginv)
    dG = 0.5 * (np.einsum("rlk,mnk->rmnl", dginv, t) + np.einsum("lk,rmnk->rmnl", ginv, dt))
    lin = np.einsum("mnlk->lmnk", dG) - np.einsum("nmlk->lmnk", dG)
    quad = np.einsum("mek,nle->lmnk", G, G)
    return lin + quad - np.einsum("lnmk->lmnk", quad)


def relative_error(a, b, floor=1e-3) -> float:
    """``max|a - b| / max(max|b|, floor)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.abs(a - b).max() / max(np.abs(b).max(), floor))
