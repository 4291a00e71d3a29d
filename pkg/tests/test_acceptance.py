"""Acceptance criteria, one test each.

Every test appends a ``PASS``/``FAIL`` line that is printed in the terminal
summary. Run as a script to print the lines without pytest:
``python tests/test_acceptance.py``.
"""
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cliff13 import jets, oracles, suites  # noqa: E402
from cliff13.algebra import E  # noqa: E402
from cliff13.geometry import PRESET_NAMES, Geometry, sample_points, tetrad_from_config  # noqa: E402
from cliff13.ideals import ideal_basis  # noqa: E402
from cliff13.rep import gamma_map  # noqa: E402

SEED = 2024
PRESETS = {name: tetrad_from_config({"preset": name}) for name in PRESET_NAMES}
FIELD_PRESETS = ("flat", "conformal")


def _merge(results, names=None):
    """(ok, worst check line) over the chosen checks of several suite results."""
    worst, ok, count = None, True, 0
    for r in results:
        for c in r.checks:
            if names is not None and c.name not in names:
                continue
            count += c.count
            ok &= c.passed
            ratio = c.max_residual / c.tol if c.tol else (0.0 if c.max_residual == 0 else np.inf)
            if worst is None or ratio > worst[0]:
                worst = (ratio, f"{r.name}/{c.name} {c.max_residual:.2e} (tol {c.tol:.0e})")
    return ok and count > 0, f"{count} samples, worst {worst[1]}" if worst else "no samples"


def c1_gamma_fixture():
    r = suites.rep_suite(SEED, n=1)
    return _merge([r], {"gamma_fixture"})


def c2_matrix_units():
    r = suites.rep_suite(SEED, n=1)
    return _merge([r], {"matrix_units", "matrix_unit_products"})


def c3_algebra():
    return _merge([suites.algebra_suite(SEED, 1000)])


def c4_spin():
    return _merge([suites.spin_suite(SEED, 200)])


def c5_ideals():
    return _merge([suites.ideals_suite(SEED)])


def c6_geometry():
    results = [suites.geometry_suite(t, SEED, 8, name) for name, t in PRESETS.items()]
    ok, line = _merge(results, {
        "christoffel_symmetry", "metric_compatibility", "riemann_symmetries", "first_bianchi",
        "second_bianchi", "ricci_symmetry", "ricci_identity", "flat_exact_zero",
    })
    flat = PRESETS["flat"]
    exact = all(
        not np.any(jets.value(g.christoffel)) and not np.any(jets.value(g.riemann))
        for g in (Geometry(flat, x, 2) for x in sample_points(np.random.default_rng(SEED), 20))
    )
    conf = PRESETS["conformal"]
    worst = 0.0
    for x in sample_points(np.random.default_rng(SEED + 1), 20):
        g = Geometry(conf, x, 2)
        worst = max(
            worst,
            oracles.relative_error(oracles.christoffel_fd(conf, x), jets.value(g.christoffel), floor=1e-300),
            oracles.relative_error(oracles.riemann_fd(conf, x), jets.value(g.riemann), floor=1e-300),
        )
    ok = ok and exact and worst <= 1e-5
    return ok, f"{line}; flat exact zero {exact}; conformal FD relative {worst:.2e} (tol 1e-05)"


def c7_calculus():
    results = [suites.calculus_suite(t, SEED, 100, name) for name, t in PRESETS.items()]
    return _merge(results)


def c8_field_identities():
    results = []
    for name in FIELD_PRESETS:
        for k in (1, 2, 3, 4):
            results.append(suites.tmp_suite(PRESETS[name], k, SEED, 25, name))
            results.append(suites.ym_suite(PRESETS[name], k, SEED, 25, name))
    results.append(suites.fixture_suite(seed=SEED, n=20))
    return _merge(results, {"conservation_identity", "conservation_identity_traceless", "ym_consistency", "rest_frame_tensor", "rest_frame_column"})


def c9_bridge():
    results = [suites.bridge_suite(PRESETS["conformal"], k, SEED, 100, "conformal") for k in (1, 2, 3, 4)]
    results += [suites.gauge_suite(PRESETS["conformal"], k, SEED, 6, "conformal") for k in (1, 2, 3, 4)]
    return _merge(results)


def c10_even():
    results = [suites.even_suite(PRESETS[name], k, SEED, 50, name) for name in FIELD_PRESETS for k in (1, 2)]
    results.append(suites.fixture_suite(seed=SEED, n=20))
    return _merge(results, {"even_solve_round_trip", "even_ideal_agreement", "rest_frame_even"})


CRITERIA = [
    (1, "representation fixture", c1_gamma_fixture),
    (2, "matrix-unit law", c2_matrix_units),
    (3, "algebra suite", c3_algebra),
    (4, "spin suite", c4_spin),
    (5, "ideal and Lie suite", c5_ideals),
    (6, "geometry suite", c6_geometry),
    (7, "calculus suite", c7_calculus),
    (8, "field-equation identities", c8_field_identities),
    (9, "bridge and gauge covariance", c9_bridge),
    (10, "even-form equivalences", c10_even),
]


def evaluate(number, title, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {title}: {detail} [{time.perf_counter() - t0:.1f}s]"
    return ok, line


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    from conftest import ACCEPTANCE_LINES

    ok, line = evaluate(number, title, fn)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_gamma_generators_exact_on_flat_frame():
    fr = ideal_basis(1)
    for a in range(4):
        assert np.array_equal(gamma_map(fr, E[a]), suites.GAMMA_PRINTED[a])


if __name__ == "__main__":
    status = 0
    for crit in CRITERIA:
        ok, line = evaluate(*crit)
        print(line, flush=True)
        status |= not ok
    sys.exit(status)
