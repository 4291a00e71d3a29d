import json
import math

import numpy as np
import pytest

from cliff13 import suites
from cliff13.geometry import tetrad_from_config


def test_check_bookkeeping():
    r = suites.SuiteResult("demo", params={"points": 2})
    c = r.check("a", 1e-3)
    assert not c.passed  # no samples
    c.add(1e-4)
    c.add(5e-4)
    assert c.passed and r.passed and r.max_residual == 5e-4
    c.add(math.nan)
    assert not c.passed and r.failing() == [c]
    d = json.loads(json.dumps(r.to_dict(), default=float))
    assert d["name"] == "demo" and d["points"] == 2 and d["pass"] is False


def test_rng_streams_are_independent_and_reproducible():
    a = suites.rng_for(1, "x").normal(size=3)
    assert np.array_equal(a, suites.rng_for(1, "x").normal(size=3))
    assert not np.array_equal(a, suites.rng_for(1, "y").normal(size=3))
    assert not np.array_equal(a, suites.rng_for(2, "x").normal(size=3))


def test_suites_deterministic():
    tet = tetrad_from_config({"preset": "perturbed"})
    a = suites.calculus_suite(tet, 3, 2, "perturbed").to_dict()
    b = suites.calculus_suite(tet, 3, 2, "perturbed").to_dict()
    assert a == b and a["pass"]


def test_even_suite_rejects_large_k():
    with pytest.raises(ValueError):
        suites.even_suite(tetrad_from_config({"preset": "flat"}), 3)


def test_threads_env(monkeypatch):
    monkeypatch.setenv("CLIFF13_THREADS", "3")
    assert suites.threads() == 3
    monkeypatch.setenv("CLIFF13_THREADS", "zero")
    assert suites.threads() == 1
    assert suites.run_parallel([lambda: 1, lambda: 2]) == [1, 2]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_random_fields_live_in_the_right_spaces(k):
    from cliff13.ideals import commutant_membership, ideal_basis

    rng = np.random.default_rng(k)
    fr = ideal_basis(k)
    x = np.array([0.1, 0.0, -0.2, 0.3])
    assert fr.in_ideal(suites.random_wave(rng, k)(x))[0]
    for A in suites.random_potential(rng, k):
        assert commutant_membership(fr.t, A(x))["in_L"]
