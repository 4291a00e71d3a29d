"""Command-line entry point: ``cliff13 <command> [options]``.

Structured results go to stdout as JSON (complex numbers as ``[re, im]``),
per-point tables as CSV.  Exit status is 0 when every executed check
passes, 1 on a failed check and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__, suites
from .algebra import BLADE_LABELS, Multivector
from .errors import Cliff13Error
from .geometry import PRESET_NAMES, Geometry, sample_points, signature_ok, tetrad_from_config
from .ideals import ideal_basis
from .rep import dump_fixture_json, gamma_fixture_dict, gamma_map
from .spin import exp_series, exterior_exp, is_spin, lambda_poly, lorentz_matrix, lorentz_residuals

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Invalid user input; reported with exit status 2."""


def _pair(z) -> list:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def _matrix(a) -> list:
    return [[_pair(z) for z in row] for row in np.asarray(a)]


def load_schema() -> dict:
    return json.loads(resources.files("cliff13").joinpath("data/config.schema.json").read_text())


def validate_config(cfg) -> dict:
    """Validate against the shipped schema; raise :class:`InputError` listing every violation."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [f"  at /{'/'.join(map(str, e.absolute_path))}: {e.message}" for e in errors]
        raise InputError("config does not match the schema:\n" + "\n".join(lines))
    return cfg


def _read_json(text_or_path: str):
    p = Path(text_or_path)
    try:
        text = p.read_text() if p.exists() else text_or_path
    except OSError as exc:
        raise InputError(f"cannot read {text_or_path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {text_or_path!r}: {exc}") from exc


def load_config(path: str | None) -> dict:
    if path is None:
        return {"preset": "flat"}
    return validate_config(_read_json(path))


def _multivector(obj) -> Multivector:
    if not isinstance(obj, dict):
        raise InputError("a multivector must be a JSON object of blade labels")
    try:
        return Multivector.from_json(obj)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def _report(command: str, config, results, extra=None) -> dict:
    out = {
        "tool": "cliff13",
        "version": __version__,
        "command": command,
        "config": config,
        "suites": [r.to_dict() for r in results],
        "pass": all(r.passed for r in results),
    }
    if extra:
        out.update(extra)
    out["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return out


def _emit(obj, args, text=None) -> None:
    text = text if text is not None else json.dumps(obj, indent=2) + "\n"
    sys.stdout.write(text)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)


def _suite_exit(report) -> int:
    if report["pass"]:
        return EXIT_OK
    for s in report["suites"]:
        for c in s["details"]:
            if not c["pass"]:
                print(f"FAIL {s['name']}/{c['name']}: {c['max_residual']:.3e} > {c['tolerance']:.1e}", file=sys.stderr)
    return EXIT_FAIL


# commands ------------------------------------------------------------

def cmd_verify(args) -> int:
    seed, scale = args.seed, args.points
    jobs = [
        lambda: suites.algebra_suite(seed, 100 * scale),
        lambda: suites.spin_suite(seed, 20 * scale),
        lambda: suites.ideals_suite(seed),
        lambda: suites.rep_suite(seed, 20 * scale),
        lambda: suites.fixture_suite(seed=seed),
    ]
    for name in PRESET_NAMES:
        tet = tetrad_from_config({"preset": name})
        jobs.append(lambda t=tet, n=name: suites.geometry_suite(t, seed, scale, n))
        jobs.append(lambda t=tet, n=name: suites.calculus_suite(t, seed, 4 * scale, n))
        for k in (1, 2, 3, 4):
            for sname, fn in suites.EQUATION_SUITES.items():
                if sname == "even" and k > 2:
                    continue
                jobs.append(lambda t=tet, n=name, k=k, f=fn: f(t, k, seed, scale, n))
    results = suites.run_parallel(jobs)
    report = _report("verify", {"seed": seed, "points": scale}, results)
    _emit(report, args)
    return _suite_exit(report)


def cmd_frame(args) -> int:
    fr = ideal_basis(args.k)
    obj = {
        "k": fr.k,
        "dimension": fr.dim,
        "t": fr.t.to_json(),
        "basis": [b.to_json() for b in fr.basis],
        "generators": [g.to_json() for g in fr.generators],
        "structure_constants": fr.lie.structure.tolist(),
        "layout": "structure_constants[m][n][l] = c^m_{nl}",
    }
    _emit(obj, args)
    return EXIT_OK


def cmd_rep(args) -> int:
    if args.fixtures:
        _emit(None, args, dump_fixture_json(gamma_fixture_dict()))
        return EXIT_OK
    if args.input is None:
        raise InputError("rep needs --input <multivector.json> or --fixtures")
    U = _multivector(_read_json(args.input))
    _emit({"k": args.k, "matrix": _matrix(gamma_map(ideal_basis(args.k), U))}, args)
    return EXIT_OK


def cmd_spin(args) -> int:
    U = _multivector(_read_json(args.generator))
    try:
        S = exterior_exp(U) if args.exterior else exp_series(U)
    except Cliff13Error as exc:
        raise InputError(str(exc)) from exc
    ok, res = is_spin(S)
    P = lorentz_matrix(S) if ok else None
    obj = {
        "method": "exterior" if args.exterior else "series",
        "element": S.value.to_json(),
        "membership": {"pass": ok, **res},
        "lorentz": P.tolist() if P is not None else None,
        "lorentz_residuals": lorentz_residuals(P) if P is not None else None,
    }
    if args.exterior:
        obj["lambda"] = _pair(lambda_poly(U))
    _emit(obj, args)
    return EXIT_OK if ok else EXIT_FAIL


_GEOMETRY_FIELDS = (
    ["point"] + [f"x{m}" for m in range(4)] + ["det_e", "signature_ok"]
    + [f"g{m}{n}" for m in range(4) for n in range(4)]
    + [f"Gamma{m}{n}^{l}" for m in range(4) for n in range(4) for l in range(4)]
    + [f"Ric{m}{n}" for m in range(4) for n in range(4)] + ["R", "max_abs_riemann"]
)


def cmd_geometry(args) -> int:
    cfg = load_config(args.config)
    tet = tetrad_from_config(cfg)
    rng = suites.rng_for(args.seed if args.seed is not None else cfg.get("seed", 0), "geometry-cli")
    n = args.points if args.points is not None else cfg.get("points", 10)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(_GEOMETRY_FIELDS)
    for i, x in enumerate(sample_points(rng, n)):
        p = Geometry(tet, x, 2).point()
        w.writerow(
            [i] + [repr(float(v)) for v in x] + [repr(float(np.linalg.det(p.tetrad))), int(signature_ok(p.g))]
            + [repr(float(v)) for v in p.g.ravel()]
            + [repr(float(v)) for v in p.christoffel.ravel()]
            + [repr(float(v)) for v in p.ricci.ravel()]
            + [repr(float(p.scalar)), repr(float(np.abs(p.riemann).max()))]
        )
    _emit(None, args, buf.getvalue())
    return EXIT_OK


def _preset_name(cfg) -> str:
    return cfg.get("preset", "flat")


def cmd_calculus(args) -> int:
    cfg = load_config(args.config)
    tet = tetrad_from_config(cfg)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    n = args.points if args.points is not None else cfg.get("points", 20)
    name = _preset_name(cfg)
    jobs = []
    if args.suite in ("calculus", "all"):
        jobs.append(lambda: suites.calculus_suite(tet, seed, n, name))
    if args.suite in ("geometry", "all"):
        jobs.append(lambda: suites.geometry_suite(tet, seed, max(1, n // 5), name))
    results = suites.run_parallel(jobs)
    report = _report("calculus", cfg, results, {"seed": seed})
    _emit(report, args)
    return _suite_exit(report)


def export_solution_csv(path: str, k: int, m: float, points) -> None:
    """Rest-frame solution samples: x, blade coefficients and the column, as Re/Im pairs."""
    wave = suites.rest_frame_wave(m)
    fr = ideal_basis(k)
    header = [f"x{mu}" for mu in range(4)]
    header += [f"{part}_{'e' + BLADE_LABELS[b] if b else 'scalar'}" for b in range(16) for part in ("re", "im")]
    header += [f"{part}_psi{K}" for K in range(fr.dim) for part in ("re", "im")]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for x in points:
            psi = wave(x)
            col = fr.coords(psi)
            row = [repr(float(v)) for v in x]
            row += [repr(float(v)) for c in psi.coeffs for v in (c.real + 0.0, c.imag + 0.0)]
            row += [repr(float(v)) for c in col for v in (c.real + 0.0, c.imag + 0.0)]
            w.writerow(row)


def cmd_equations(args) -> int:
    cfg = load_config(args.config)
    tet = tetrad_from_config(cfg)
    k = args.k if args.k is not None else cfg.get("k", 1)
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)
    n = args.points if args.points is not None else cfg.get("points", 20)
    m = cfg.get("m", 0.7)
    if args.suite == "even" and k not in (1, 2):
        raise InputError("suite 'even' needs k = 1 or k = 2")
    kwargs = {} if args.suite == "ym" else {"m": m}  # the Yang-Mills identity has no mass
    res = suites.EQUATION_SUITES[args.suite](tet, k, seed, n, _preset_name(cfg), **kwargs)
    extra = {"suite": args.suite, "points": n, "max_residual": res.max_residual, "seed": seed}
    if args.export_fixture:
        export_solution_csv(args.export_fixture, k, m, sample_points(suites.rng_for(seed, "fixture-csv"), n))
        extra["fixture_csv"] = args.export_fixture
    report = _report("equations", cfg, [res], extra)
    _emit(report, args)
    return _suite_exit(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliff13", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("--output", "-o", help="also write the result to this file")
        return sp

    v = out(sub.add_parser("verify", help="run every suite across all presets and k"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--points", type=int, default=3, help="sample count per configuration")
    v.set_defaults(func=cmd_verify)

    f = out(sub.add_parser("frame", help="idempotent, ideal basis, generators, structure constants"))
    f.add_argument("--k", type=int, choices=(1, 2, 3, 4), required=True)
    f.set_defaults(func=cmd_frame)

    r = out(sub.add_parser("rep", help="matrix of a form on I(t_(k))"))
    r.add_argument("--k", type=int, choices=(1, 2, 3, 4), default=1)
    r.add_argument("--input", help="multivector JSON (file or literal)")
    r.add_argument("--fixtures", action="store_true", help="dump the k=1 generator matrices")
    r.set_defaults(func=cmd_rep)

    s = out(sub.add_parser("spin", help="Spin element from a 2-form generator"))
    s.add_argument("--generator", required=True, help="2-form JSON (file or literal)")
    s.add_argument("--exterior", action="store_true", help="use the exterior exponent")
    s.set_defaults(func=cmd_spin)

    g = out(sub.add_parser("geometry", help="per-point metric, connection and curvature as CSV"))
    g.add_argument("--config", required=True)
    g.add_argument("--points", type=int)
    g.add_argument("--seed", type=int)
    g.set_defaults(func=cmd_geometry)

    c = out(sub.add_parser("calculus", help="form-calculus identity suites"))
    c.add_argument("--config", required=True)
    c.add_argument("--suite", choices=("calculus", "geometry", "all"), default="all")
    c.add_argument("--points", type=int)
    c.add_argument("--seed", type=int)
    c.set_defaults(func=cmd_calculus)

    e = out(sub.add_parser("equations", help="field-equation identity suites"))
    e.add_argument("--config", required=True)
    e.add_argument("--k", type=int, choices=(1, 2, 3, 4))
    e.add_argument("--suite", choices=tuple(suites.EQUATION_SUITES), required=True)
    e.add_argument("--seed", type=int)
    e.add_argument("--points", type=int)
    e.add_argument("--export-fixture", metavar="CSV", help="write rest-frame solution samples")
    e.set_defaults(func=cmd_equations)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for bad usage
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (Cliff13Error, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
