"""Command-line interface: ``harmclass {check,construct,verify,render,envelope}``.

Every command prints one JSON document on stdout with the shape
``{"artifact", "params", "certificates", "construction"}`` (plus a few
command-specific keys).  Exit status: 0 when every requested certificate
passes, 1 when a mathematical check fails, 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bounds, constructions, membership, params, verify
from .errors import DivergenceError, DomainError
from .membership import Certificate
from .params import ClassParams
from .render import FORMATS, RenderSpec, render
from .series import GridSpec, HarmonicMap, map_from_json, map_to_json
from .specfun import HypergeometricParams

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command-line input (unreadable or malformed files, bad flag values)."""


def _finite_or_none(obj):
    """Replace non-finite floats so the output stays strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(_finite_or_none(report), indent=2, allow_nan=False) + "\n")


def _report(artifact: str, p: ClassParams | None, certs: list[Certificate], construction=None, **extra) -> dict:
    out = {
        "artifact": artifact,
        "params": p.to_dict() if p is not None else None,
        "certificates": [c.to_dict() for c in certs],
        "construction": construction,
    }
    out.update(extra)
    return out


def _load_map(path: str) -> HarmonicMap:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return map_from_json(data)


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _grid(args) -> GridSpec:
    base = GridSpec.default()
    radii = base.radii
    if args.grid_radii:
        try:
            radii = tuple(float(v) for v in args.grid_radii.split(","))
        except ValueError as exc:
            raise InputError(f"--grid-radii must be comma-separated numbers: {args.grid_radii!r}") from exc
    angles = args.grid_angles if args.grid_angles is not None else base.angles_per_circle
    return GridSpec(radii, angles)


def _class_params(args, required: bool = True) -> ClassParams | None:
    if args.alpha is None and args.beta is None and not required:
        return None
    if args.alpha is None or args.beta is None:
        raise InputError("both --alpha and --beta are required")
    return ClassParams(args.alpha, args.beta)


def cmd_check(args) -> int:
    p = _class_params(args)
    f = _load_map(args.map_file)
    if args.truncation is not None:
        f = HarmonicMap(f.h.truncated(args.truncation), f.g.truncated(args.truncation))
    grid = _grid(args)
    tol = args.tolerance
    certs = []
    notes = []
    if f.in_h0:
        certs.append(membership.coefficient_margin(f, p, tol))
    else:
        notes.append("g'(0) != 0: the map is outside H0, coefficient condition not applicable")
    sup = membership.grid_sup_certificate(f, p, grid, tol)
    certs.append(sup)
    certs.append(membership.sense_preserving_certificate(f, grid))
    if sup.passed:
        certs.append(membership.derivative_bound_check(f, p, grid, args.lambda_count, tol))
    certs.append(membership.injectivity_scan(f, grid))
    regime = params.classify(p).to_dict()
    _emit(_report("check", p, certs, map_file=args.map_file, regime=regime, notes=notes))
    return EXIT_OK if sup.passed else EXIT_FAIL


def _construct_map(args) -> tuple[HarmonicMap, ClassParams | None, dict, dict | None]:
    """Build the requested map; returns (map, class params, spec record, condition report)."""
    if args.what in ("theta", "extremal"):
        p = _class_params(args)
        if args.what == "theta":
            return bounds.theta_map(p), p, {"kind": "theta"}, None
        n = args.n if args.n is not None else 2
        return bounds.make_extremal(args.kind, n, p), p, {"kind": args.kind, "n": n}, None
    p = _class_params(args, required=False)
    if args.what == "hyper":
        kind = f"hyper_{args.family}"
        if None in (args.a, args.b, args.c):
            raise InputError("hyper constructions need --a, --b and --c")
        spec = constructions.ConstructionSpec(kind, params=HypergeometricParams(args.a, args.b, args.c),
                                              class_params=p, truncation=args.truncation)
    else:
        kind = f"poly_{args.family}"
        if args.m is None or args.c is None:
            raise InputError("poly constructions need --m and --c")
        spec = constructions.ConstructionSpec(kind, m=args.m, c=args.c, class_params=p,
                                              truncation=args.truncation)
    f, tail = constructions.build_with_tail(spec)
    record = spec.to_dict()
    record["truncation_degree"] = f.degree
    record["dropped_tail_estimate"] = tail
    condition = None
    if p is not None:
        try:
            condition = constructions.condition_for_spec(spec, args.form).to_dict()
        except (DomainError, DivergenceError) as exc:
            record["condition_error"] = str(exc)
    return f, p, record, condition


def cmd_construct(args) -> int:
    f, p, record, condition = _construct_map(args)
    _write(args.output, json.dumps(map_to_json(f)) + "\n")
    certs = [membership.coefficient_margin(f, p, args.tolerance)] if p is not None else []
    _emit(_report("construct", p, certs, condition, spec=record, output=args.output))
    return EXIT_OK if all(c.passed for c in certs) else EXIT_FAIL


def cmd_verify(args) -> int:
    summary = verify.run(args.suite, args.seed)
    _emit(_report("verify", None, [], None, verify=summary))
    return EXIT_OK if summary["passed"] else EXIT_FAIL


def cmd_render(args) -> int:
    f = _load_map(args.map_file)
    output = args.output or f"map.{args.format}"
    spec = RenderSpec(args.circles, args.rays, args.samples, args.format, output)
    try:
        render(f, spec)
    except OSError as exc:
        raise InputError(f"cannot write {output}: {exc.strerror or exc}") from exc
    length = bounds.boundary_length(f)
    _emit(_report("render", None, [], None, output=output, format=args.format,
                  boundary_length=length, boundary_length_below_4pi=length < 4.0 * math.pi))
    return EXIT_OK


def cmd_envelope(args) -> int:
    p = _class_params(args)
    try:
        radii = [float(v) for v in args.radii.split(",")]
    except ValueError as exc:
        raise InputError(f"--radii must be comma-separated numbers: {args.radii!r}") from exc
    text = bounds.envelope_csv(p, radii)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_params(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--alpha", type=float, help="class parameter alpha > -1")
    sp.add_argument("--beta", type=float, help="class parameter beta > 0")


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--tolerance", type=float, default=membership.DEFAULT_TOLERANCE,
                    help="certificate tolerance (default %(default)g)")
    sp.add_argument("--truncation", type=int, help="truncate or construct series at this degree")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmclass", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ck = sub.add_parser("check", help="certify membership of a map stored as JSON")
    ck.add_argument("map_file")
    _add_params(ck)
    _add_common(ck)
    ck.add_argument("--grid-radii", help="comma-separated radii in (0, 1), increasing")
    ck.add_argument("--grid-angles", type=int, help="angles per circle (default 512)")
    ck.add_argument("--lambda-count", type=int, default=membership.DEFAULT_LAMBDA_COUNT,
                    help="unimodular lambda samples (default %(default)s)")
    ck.set_defaults(func=cmd_check)

    co = sub.add_parser("construct", help="build a named map and write it as JSON")
    what = co.add_subparsers(dest="what", required=True)
    th = what.add_parser("theta", help="the equality example h = z + q z^2, g = -q z^2")
    ex = what.add_parser("extremal", help="sharpness and growth witnesses")
    ex.add_argument("kind", choices=[k for k in bounds.EXTREMAL_KINDS if k != "theta"])
    ex.add_argument("--n", type=int, help="coefficient index (default 2)")
    hy = what.add_parser("hyper", help="hypergeometric family f1, f2 or f3")
    hy.add_argument("family", choices=["f1", "f2", "f3"])
    hy.add_argument("--a", type=float)
    hy.add_argument("--b", type=float)
    po = what.add_parser("poly", help="polynomial family F1, F2 or F3 (a = b = -m)")
    po.add_argument("family", choices=["F1", "F2", "F3"])
    po.add_argument("--m", type=int)
    for sp in (hy, po):
        sp.add_argument("--c", type=float)
        sp.add_argument("--form", choices=constructions.CONDITION_FORMS, default="corrected",
                        help="condition variant (default %(default)s)")
    for sp in (th, ex, hy, po):
        _add_params(sp)
        _add_common(sp)
        sp.add_argument("-o", "--output", required=True, help="output JSON path")
    co.set_defaults(func=cmd_construct)

    ve = sub.add_parser("verify", help="run seeded property suites")
    ve.add_argument("suite", choices=(*verify.SUITES, "all"))
    ve.add_argument("--seed", type=int, default=0)
    ve.set_defaults(func=cmd_verify)

    rd = sub.add_parser("render", help="draw images of circles, rays and the boundary")
    rd.add_argument("map_file")
    rd.add_argument("--circles", type=int, default=8)
    rd.add_argument("--rays", type=int, default=16)
    rd.add_argument("--samples", type=int, default=256, help="samples per curve")
    rd.add_argument("--format", choices=FORMATS, default="svg")
    rd.add_argument("-o", "--output", help="output path (default map.<format>)")
    rd.set_defaults(func=cmd_render)

    en = sub.add_parser("envelope", help="growth envelope table as CSV")
    _add_params(en)
    en.add_argument("--radii", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    en.add_argument("-o", "--output")
    en.set_defaults(func=cmd_envelope)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, DomainError, DivergenceError, ValueError, TypeError, KeyError) as exc:
        print(f"harmclass: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
