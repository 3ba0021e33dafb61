"""Command-line front end.

Exit codes: 0 success (and verification PASS), 1 verification failure,
2 malformed input, 3 precondition violation.  Failures print one
machine-readable JSON object on stderr.  Output is deterministic: the same
input yields byte-identical bytes regardless of ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import serialization as ser
from .errors import InputFormatError, OutsideDomainError, PwlatticeError
from .extension import extend_to_space, import_relu, radial_extend
from .geometry import Polyhedron, coordinate_range, interior_point
from .latticizer import (
    evaluate_lattice,
    lattice_to_pwl,
    latticize,
    verify_symbolic,
)
from .model import PwlFunction, eval_pwl, validate_pwl


def main() -> None:
    sys.exit(cli_main())


def cli_main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputFormatError as exc:
        return _fail(2, exc)
    except OSError as exc:
        return _fail(2, exc)
    except PwlatticeError as exc:
        return _fail(3, exc)


def _fail(code: int, exc: Exception) -> int:
    payload = {"error": {"exit": code, "kind": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(payload), file=sys.stderr)
    return code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwlattice",
        description=(
            "Convert piecewise linear functions to max-min polynomials of "
            "their affine components and back, with exact rational arithmetic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads", type=int, default=1, help="parallelize independent LP calls"
    )
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", help="write the result here instead of stdout")

    p = sub.add_parser("build", parents=[common, out], help="function -> polynomial")
    p.add_argument("pwl")
    p.add_argument("--no-simplify", action="store_true")
    p.add_argument("--diagnostics", action="store_true")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("verify", parents=[common], help="prove polynomial == function")
    p.add_argument("pwl")
    p.add_argument("lattice")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("eval", parents=[common], help="exact value at a point")
    p.add_argument("payload")
    p.add_argument("--point", required=True, help='comma-separated rationals, e.g. "3/2,0"')
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("cells", parents=[common, out], help="dump the cell complex")
    p.add_argument("pwl")
    p.set_defaults(handler=_cmd_cells)

    p = sub.add_parser("dist", parents=[common], help="separation set and distance")
    p.add_argument("pwl")
    p.add_argument("--cells", required=True, metavar="P,Q")
    p.set_defaults(handler=_cmd_dist)

    p = sub.add_parser("geodesic", parents=[common], help="unit-step chain of cells")
    p.add_argument("pwl")
    p.add_argument("--cells", required=True, metavar="P,Q")
    p.set_defaults(handler=_cmd_geodesic)

    p = sub.add_parser("lattice2pwl", parents=[common, out], help="polynomial -> function")
    p.add_argument("lattice")
    p.add_argument("--domain", required=True)
    p.set_defaults(handler=_cmd_lattice2pwl)

    p = sub.add_parser(
        "extend-radial", parents=[common, out], help="extend boundary data radially"
    )
    p.add_argument("boundary")
    p.set_defaults(handler=_cmd_extend_radial)

    p = sub.add_parser(
        "extend-space", parents=[common, out], help="extend to a larger domain"
    )
    p.add_argument("pwl")
    p.add_argument("--target", required=True)
    p.set_defaults(handler=_cmd_extend_space)

    p = sub.add_parser(
        "import-relu", parents=[common, out], help="one-hidden-layer net -> function"
    )
    p.add_argument("net")
    p.add_argument("--box", required=True)
    p.set_defaults(handler=_cmd_import_relu)

    p = sub.add_parser(
        "plot", parents=[common, out], help="delimited table of samples along one axis"
    )
    p.add_argument("payload")
    p.add_argument("--axis", type=int, required=True)
    p.add_argument("--slice", help="comma-separated base point; the axis entry is swept")
    p.add_argument("--range", dest="span", metavar="LO:HI")
    p.add_argument("--samples", type=int, default=41)
    p.set_defaults(handler=_cmd_plot)

    return parser


def _read_manifest(path: str, *expected: str) -> tuple[str, dict]:
    kind, data = ser.load_manifest(Path(path).read_text())
    if expected and kind not in expected:
        raise InputFormatError(
            f"{path}: expected a {' or '.join(expected)} payload, found {kind}"
        )
    return kind, data


def _load_pwl(path: str) -> PwlFunction:
    _, data = _read_manifest(path, "pwl")
    return ser.pwl_from_json(data)


def _load_valid_pwl(path: str, threads: int) -> PwlFunction:
    f = _load_pwl(path)
    report = validate_pwl(f, threads=threads)
    if not report.ok:
        detail = "; ".join(f"{v.kind}{list(v.pieces)}" for v in report.violations)
        raise PwlatticeError(f"{path}: not a valid piecewise linear function: {detail}")
    return f


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_point(text: str, dim: int) -> tuple[Fraction, ...]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != dim:
        raise InputFormatError(f"point needs {dim} coordinates, got {len(parts)}")
    try:
        return tuple(Fraction(part) for part in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad point {text!r}") from exc


def _parse_cell_pair(text: str, count: int) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputFormatError(f"--cells wants two ids, got {text!r}")
    try:
        p, q = (int(part) for part in parts)
    except ValueError as exc:
        raise InputFormatError(f"bad cell ids {text!r}") from exc
    if not (0 <= p < count and 0 <= q < count):
        raise PwlatticeError(f"cell ids must be in [0, {count})")
    return p, q


def _cmd_build(args) -> int:
    f = _load_valid_pwl(args.pwl, args.threads)
    result = latticize(f, simplify_terms=not args.no_simplify, threads=args.threads)
    body = ser.lattice_to_json(result.polynomial)
    if args.diagnostics:
        diag: dict = {
            "raw_terms": [sorted(term) for term in result.raw_terms],
        }
        if result.analysis is not None:
            analysis = result.analysis
            diag["dominants"] = list(analysis.dominants)
            diag["cells"] = ser.complex_to_json(analysis.complex, analysis)["cells"]
        body["diagnostics"] = diag
    _emit(args, ser.dump_manifest("lattice", body))
    return 0


def _sample_points(domain: Polyhedron, count: int, seed: int = 0):
    """Deterministic exact rational points inside a bounded domain."""
    rng = random.Random(seed)
    ranges = [coordinate_range(domain, axis) for axis in range(domain.dim)]
    scale = 4096
    points = []
    attempts = 0
    while len(points) < count and attempts < 64 * count:
        attempts += 1
        cand = tuple(
            r.lower + (r.upper - r.lower) * Fraction(rng.randint(0, scale), scale)
            for r in ranges
        )
        if domain.contains(cand):
            points.append(cand)
    return points


def _cmd_verify(args) -> int:
    f = _load_valid_pwl(args.pwl, args.threads)
    _, data = _read_manifest(args.lattice, "lattice")
    poly = ser.lattice_from_json(data)
    report = verify_symbolic(f, poly, threads=args.threads)
    mismatches = 0
    first = None
    points = _sample_points(f.domain, args.samples)
    for x in points:
        if eval_pwl(f, x) != evaluate_lattice(poly, x):
            mismatches += 1
            if first is None:
                first = [ser.rational_to_str(v) for v in x]
    passed = report.passed and mismatches == 0
    out = {
        "symbolic": {
            "passed": report.passed,
            "cells": len(report.checks),
            "failures": [
                {
                    "cell": c.cell_id,
                    "dominant": c.dominant,
                    "reduced_max": c.reduced_max,
                    "offending_terms": list(c.offending_terms),
                }
                for c in report.failures()
            ],
        },
        "sampled": {"points": len(points), "mismatches": mismatches},
        "passed": passed,
    }
    if first is not None:
        out["sampled"]["first_mismatch"] = first
    print(json.dumps(out, indent=2))
    return 0 if passed else 1


def _cmd_eval(args) -> int:
    kind, data = _read_manifest(args.payload, "pwl", "lattice")
    if kind == "pwl":
        f = ser.pwl_from_json(data)
        x = _parse_point(args.point, f.dim)
        value = eval_pwl(f, x)
    else:
        poly = ser.lattice_from_json(data)
        x = _parse_point(args.point, poly.dim)
        value = evaluate_lattice(poly, x)
    print(ser.rational_to_str(value))
    return 0


def _cmd_cells(args) -> int:
    from .latticizer import analyze

    f = _load_valid_pwl(args.pwl, args.threads)
    analysis = analyze(f, threads=args.threads)
    body = ser.complex_to_json(analysis.complex, analysis)
    _emit(args, ser.dump_manifest("complex", body))
    return 0


def _metric_context(args):
    from .latticizer import analyze

    f = _load_valid_pwl(args.pwl, args.threads)
    analysis = analyze(f, threads=args.threads)
    complex = analysis.complex
    p, q = _parse_cell_pair(args.cells, len(complex))
    return complex, complex.cell(p), complex.cell(q)


def _cmd_dist(args) -> int:
    from .arrangement import separation

    complex, p, q = _metric_context(args)
    sep = separation(complex, p, q)
    lines = [str(sep.distance)]
    for k in sep.hyperplanes:
        hyp = complex.arrangement.hyperplanes[k]
        normal = ",".join(ser.rational_to_str(c) for c in hyp.normal)
        lines.append(f"{k}: ({normal}) . x = {ser.rational_to_str(hyp.offset)}")
    print("\n".join(lines))
    return 0


def _cmd_geodesic(args) -> int:
    from .arrangement import geodesic

    complex, p, q = _metric_context(args)
    path = geodesic(complex, p, q)
    print(" ".join(str(c.id) for c in path))
    return 0


def _cmd_lattice2pwl(args) -> int:
    _, data = _read_manifest(args.lattice, "lattice")
    poly = ser.lattice_from_json(data)
    _, dom_data = _read_manifest(args.domain, "polyhedron")
    gamma = ser.polyhedron_from_json(dom_data)
    f = lattice_to_pwl(poly, gamma, threads=args.threads)
    _emit(args, ser.dump_manifest("pwl", ser.pwl_to_json(f)))
    return 0


def _cmd_extend_radial(args) -> int:
    _, data = _read_manifest(args.boundary, "boundary")
    b = ser.boundary_from_json(data)
    f = radial_extend(b)
    _emit(args, ser.dump_manifest("pwl", ser.pwl_to_json(f)))
    return 0


def _cmd_extend_space(args) -> int:
    f = _load_valid_pwl(args.pwl, args.threads)
    _, data = _read_manifest(args.target, "polyhedron")
    target = ser.polyhedron_from_json(data)
    g = extend_to_space(f, target)
    _emit(args, ser.dump_manifest("pwl", ser.pwl_to_json(g)))
    return 0


def _cmd_import_relu(args) -> int:
    _, data = _read_manifest(args.net, "relu")
    net = ser.relu_from_json(data)
    _, box_data = _read_manifest(args.box, "polyhedron")
    box = ser.polyhedron_from_json(box_data)
    f = import_relu(net, box, threads=args.threads)
    _emit(args, ser.dump_manifest("pwl", ser.pwl_to_json(f)))
    return 0


def _sweep_interval(domain: Polyhedron, base, axis: int):
    """Exact feasible interval of the axis coordinate with the rest fixed."""
    lo = None
    hi = None
    for hs in domain.halfspaces:
        rest = sum(
            (n * b for j, (n, b) in enumerate(zip(hs.normal, base)) if j != axis),
            Fraction(0),
        )
        slope = hs.normal[axis]
        margin = hs.bound - rest
        if slope == 0:
            if margin < 0:
                return None
        elif slope > 0:
            cand = margin / slope
            hi = cand if hi is None or cand < hi else hi
        else:
            cand = margin / slope
            lo = cand if lo is None or cand > lo else lo
    return lo, hi


def _cmd_plot(args) -> int:
    kind, data = _read_manifest(args.payload, "pwl", "lattice")
    if kind == "pwl":
        f = ser.pwl_from_json(data)
        dim = f.dim
        evaluate = lambda x: eval_pwl(f, x)
    else:
        poly = ser.lattice_from_json(data)
        dim = poly.dim
        evaluate = lambda x: evaluate_lattice(poly, x)
    if not 0 <= args.axis < dim:
        raise PwlatticeError(f"--axis must be in [0, {dim})")
    if args.samples < 2:
        raise PwlatticeError("--samples must be at least 2")

    if args.slice is not None:
        base = list(_parse_point(args.slice, dim))
    elif kind == "pwl":
        point = interior_point(f.domain)
        if point is None:
            raise PwlatticeError("domain has no interior to slice through")
        base = list(point)
    else:
        base = [Fraction(0)] * dim

    lo = hi = None
    if args.span is not None:
        try:
            lo_text, hi_text = args.span.split(":")
            lo, hi = Fraction(lo_text), Fraction(hi_text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"bad --range {args.span!r}") from exc
    if kind == "pwl":
        window = _sweep_interval(f.domain, base, args.axis)
        if window is None or window[0] is None or window[1] is None:
            raise PwlatticeError("the slice line misses the domain")
        lo = window[0] if lo is None or lo < window[0] else lo
        hi = window[1] if hi is None or hi > window[1] else hi
    else:
        lo = Fraction(-10) if lo is None else lo
        hi = Fraction(10) if hi is None else hi
    if lo > hi:
        raise PwlatticeError("empty sample range")

    others = ",".join(
        ser.rational_to_str(v) if j != args.axis else "*" for j, v in enumerate(base)
    )
    lines = [f"# axis {args.axis}; base ({others}); range [{ser.rational_to_str(lo)}, {ser.rational_to_str(hi)}]"]
    lines.append(f"x{args.axis}\tvalue")
    steps = args.samples - 1
    for k in range(args.samples):
        t = lo + (hi - lo) * Fraction(k, steps)
        x = list(base)
        x[args.axis] = t
        lines.append(f"{ser.rational_to_str(t)}\t{ser.rational_to_str(evaluate(tuple(x)))}")
    _emit(args, "\n".join(lines) + "\n")
    return 0
