import numpy as np
import pytest

from cliff13.fields import X, Poly, exp
from cliff13.geometry import conformal, flat
from cliff13.oracles import christoffel_fd, metric_derivatives_fd, metric_value, relative_error, riemann_fd

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def test_metric_value():
    tet = conformal(exp(0.5 * X[2]))
    x = np.array([0, 0, 0.4, 0])
    assert np.allclose(metric_value(tet, x), np.exp(0.4) * ETA)


def test_fd_derivatives_of_quadratic_metric():
    # g = (1 + x1^2)^2 eta: central differences are exact up to rounding for low degree
    tet = conformal(Poly({(0, 0, 0, 0): 1.0, (0, 2, 0, 0): 1.0}))
    x = np.array([0.0, 0.3, 0.0, 0.0])
    g, dg, ddg = metric_derivatives_fd(tet, x)
    om = 1 + 0.09
    assert np.allclose(g, om**2 * ETA)
    assert dg[1][0, 0] == pytest.approx(2 * om * 0.6, rel=1e-7)
    assert ddg[1, 1][0, 0] == pytest.approx(2 * 0.6**2 + 4 * om, rel=1e-6)


def test_flat_fd_is_zero():
    x = np.array([0.1, 0.2, 0.3, 0.4])
    assert np.abs(christoffel_fd(flat(), x)).max() == 0
    assert np.abs(riemann_fd(flat(), x)).max() == 0


def test_relative_error():
    assert relative_error(np.array([1.0, 2.0]), np.array([1.0, 2.0])) == 0
    assert relative_error(np.array([1.1]), np.array([1.0])) == pytest.approx(0.1)
    # below the floor the error is absolute / floor
    assert relative_error(np.array([1e-6]), np.array([0.0]), floor=1e-3) == pytest.approx(1e-3)
