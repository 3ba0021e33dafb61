"""Bit-exact JSON serialization for every pipeline payload.

Rationals travel as strings ``"p/q"`` in lowest terms (plain ``"p"`` for
integers); integers are also accepted on input, floats never are.  Payloads
are manifests: ``format_version``, ``kind``, then the body.  Serialization
is deterministic, so equal payloads produce byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .arrangement import CellComplex
from .errors import InputFormatError
from .extension import BoundaryPwl, ReluNet1
from .geometry import AffineFunc, Halfspace, Polyhedron
from .latticizer import FunctionAnalysis, LatticePolynomial
from .model import PwlFunction

FORMAT_VERSION = "1"
KINDS = ("components", "polyhedron", "pwl", "lattice", "complex", "relu", "boundary")


def rational_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_from_json(value: Any, where: str = "rational") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputFormatError(f"{where}: rationals must be strings or integers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"{where}: bad rational {value!r}") from exc
    raise InputFormatError(f"{where}: bad rational {value!r}")


def _vector_to_json(values: Sequence[Fraction]) -> list[str]:
    return [rational_to_str(v) for v in values]


def _vector_from_json(value: Any, where: str) -> tuple[Fraction, ...]:
    if not isinstance(value, list) or not value:
        raise InputFormatError(f"{where}: expected a nonempty array")
    return tuple(rational_from_json(v, where) for v in value)


def affine_to_json(func: AffineFunc) -> dict:
    return {"coeffs": _vector_to_json(func.coeffs), "offset": rational_to_str(func.offset)}


def affine_from_json(body: Any, where: str = "func") -> AffineFunc:
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    coeffs = _vector_from_json(body.get("coeffs"), f"{where}.coeffs")
    offset = rational_from_json(body.get("offset", 0), f"{where}.offset")
    return AffineFunc(coeffs, offset)


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {
        "d": p.dim,
        "halfspaces": [
            {"normal": _vector_to_json(hs.normal), "bound": rational_to_str(hs.bound)}
            for hs in p.halfspaces
        ],
    }


def polyhedron_from_json(body: Any, where: str = "polyhedron") -> Polyhedron:
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    dim = body.get("d")
    if not isinstance(dim, int) or dim < 1:
        raise InputFormatError(f"{where}.d: expected a positive integer")
    raw = body.get("halfspaces")
    if not isinstance(raw, list):
        raise InputFormatError(f"{where}.halfspaces: expected an array")
    halfspaces = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict):
            raise InputFormatError(f"{where}.halfspaces[{k}]: expected an object")
        normal = _vector_from_json(item.get("normal"), f"{where}.halfspaces[{k}].normal")
        if len(normal) != dim:
            raise InputFormatError(f"{where}.halfspaces[{k}]: normal has wrong length")
        if all(c == 0 for c in normal):
            raise InputFormatError(f"{where}.halfspaces[{k}]: normal is zero")
        bound = rational_from_json(item.get("bound"), f"{where}.halfspaces[{k}].bound")
        halfspaces.append(Halfspace(normal, bound))
    return Polyhedron(dim, tuple(halfspaces))


def components_to_json(dim: int, components: Sequence[AffineFunc]) -> dict:
    return {"d": dim, "components": [affine_to_json(g) for g in components]}


def components_from_json(body: Any, where: str = "components"):
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    dim = body.get("d")
    if not isinstance(dim, int) or dim < 1:
        raise InputFormatError(f"{where}.d: expected a positive integer")
    raw = body.get("components")
    if not isinstance(raw, list) or not raw:
        raise InputFormatError(f"{where}.components: expected a nonempty array")
    out = []
    for k, item in enumerate(raw):
        g = affine_from_json(item, f"{where}.components[{k}]")
        if g.dim != dim:
            raise InputFormatError(f"{where}.components[{k}]: wrong dimension")
        out.append(g)
    return dim, tuple(out)


def pwl_to_json(f: PwlFunction) -> dict:
    return {
        "domain": polyhedron_to_json(f.domain),
        "pieces": [
            {"region": polyhedron_to_json(p.region), "func": affine_to_json(p.func)}
            for p in f.pieces
        ],
    }


def pwl_from_json(body: Any, where: str = "pwl") -> PwlFunction:
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    domain = polyhedron_from_json(body.get("domain"), f"{where}.domain")
    raw = body.get("pieces")
    if not isinstance(raw, list) or not raw:
        raise InputFormatError(f"{where}.pieces: expected a nonempty array")
    pieces = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict):
            raise InputFormatError(f"{where}.pieces[{k}]: expected an object")
        region = polyhedron_from_json(item.get("region"), f"{where}.pieces[{k}].region")
        func = affine_from_json(item.get("func"), f"{where}.pieces[{k}].func")
        if region.dim != domain.dim or func.dim != domain.dim:
            raise InputFormatError(f"{where}.pieces[{k}]: wrong dimension")
        pieces.append((region, func))
    return PwlFunction.of(domain, pieces)


def lattice_to_json(poly: LatticePolynomial) -> dict:
    return {
        "components": components_to_json(poly.dim, poly.components),
        "terms": [sorted(term) for term in poly.terms],
    }


def lattice_from_json(body: Any, where: str = "lattice") -> LatticePolynomial:
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    _, components = components_from_json(body.get("components"), f"{where}.components")
    raw = body.get("terms")
    if not isinstance(raw, list) or not raw:
        raise InputFormatError(f"{where}.terms: expected a nonempty array")
    terms = []
    for k, term in enumerate(raw):
        if (
            not isinstance(term, list)
            or not term
            or any(not isinstance(i, int) or isinstance(i, bool) for i in term)
        ):
            raise InputFormatError(
                f"{where}.terms[{k}]: expected a nonempty array of indices"
            )
        if any(i < 0 or i >= len(components) for i in term):
            raise InputFormatError(f"{where}.terms[{k}]: index out of range")
        terms.append(frozenset(term))
    return LatticePolynomial(components, tuple(terms))


def relu_to_json(net: ReluNet1) -> dict:
    return {
        "W1": [_vector_to_json(row) for row in net.W1],
        "b1": _vector_to_json(net.b1),
        "w2": _vector_to_json(net.w2),
        "b2": rational_to_str(net.b2),
    }


def relu_from_json(body: Any, where: str = "relu") -> ReluNet1:
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    raw = body.get("W1")
    if not isinstance(raw, list) or not raw:
        raise InputFormatError(f"{where}.W1: expected a nonempty array")
    W1 = tuple(_vector_from_json(row, f"{where}.W1[{k}]") for k, row in enumerate(raw))
    if any(len(row) != len(W1[0]) for row in W1):
        raise InputFormatError(f"{where}.W1: ragged matrix")
    b1 = _vector_from_json(body.get("b1"), f"{where}.b1")
    w2 = _vector_from_json(body.get("w2"), f"{where}.w2")
    b2 = rational_from_json(body.get("b2", 0), f"{where}.b2")
    if len(b1) != len(W1) or len(w2) != len(W1):
        raise InputFormatError(f"{where}: b1/w2 length must match W1 rows")
    return ReluNet1(W1, b1, w2, b2)


def boundary_to_json(b: BoundaryPwl) -> dict:
    return {
        "polytope": polyhedron_to_json(b.polytope),
        "center": _vector_to_json(b.center),
        "facet_data": [
            {"facet": idx, "func": affine_to_json(func)} for idx, func in b.facet_data
        ],
    }


def boundary_from_json(body: Any, where: str = "boundary") -> BoundaryPwl:
    if not isinstance(body, dict):
        raise InputFormatError(f"{where}: expected an object")
    polytope = polyhedron_from_json(body.get("polytope"), f"{where}.polytope")
    center = _vector_from_json(body.get("center"), f"{where}.center")
    raw = body.get("facet_data")
    if not isinstance(raw, list) or not raw:
        raise InputFormatError(f"{where}.facet_data: expected a nonempty array")
    data = []
    for k, item in enumerate(raw):
        if not isinstance(item, dict):
            raise InputFormatError(f"{where}.facet_data[{k}]: expected an object")
        facet = item.get("facet")
        if not isinstance(facet, int) or isinstance(facet, bool):
            raise InputFormatError(f"{where}.facet_data[{k}].facet: expected an index")
        if facet < 0 or facet >= len(polytope.halfspaces):
            raise InputFormatError(f"{where}.facet_data[{k}].facet: out of range")
        func = affine_from_json(item.get("func"), f"{where}.facet_data[{k}].func")
        data.append((facet, func))
    return BoundaryPwl(polytope, center, tuple(data))


def complex_to_json(complex: CellComplex, analysis: FunctionAnalysis | None = None) -> dict:
    arr = complex.arrangement
    body: dict = {
        "d": arr.domain.dim,
        "domain": polyhedron_to_json(arr.domain),
        "hyperplanes": [
            {
                "normal": _vector_to_json(h.normal),
                "offset": rational_to_str(h.offset),
                "generators": [list(pair) for pair in sorted(h.generators)],
            }
            for h in arr.hyperplanes
        ],
        "cells": [],
    }
    for cell in complex.cells:
        entry: dict = {
            "id": cell.id,
            "signs": "".join("+" if s > 0 else "-" for s in cell.signs),
            "witness": _vector_to_json(cell.witness),
        }
        if analysis is not None:
            entry["order"] = list(analysis.order_of(cell))
            entry["dominant"] = analysis.dominants[cell.id]
        body["cells"].append(entry)
    return body


def dump_manifest(kind: str, body: dict) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown payload kind {kind!r}")
    manifest = {"format_version": FORMAT_VERSION, "kind": kind}
    manifest.update(body)
    return json.dumps(manifest, indent=2) + "\n"


def load_manifest(text: str) -> tuple[str, dict]:
    try:
        data = json.loads(text, parse_float=_refuse_float)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputFormatError("top level must be an object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise InputFormatError(f"unsupported format_version {version!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise InputFormatError(f"unknown payload kind {kind!r}")
    return kind, data


def _refuse_float(text: str):
    raise InputFormatError(f"float literal {text!r} is not exact; use \"p/q\" strings")
