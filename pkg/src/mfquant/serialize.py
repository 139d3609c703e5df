"""Lossless JSON encoding of polynomials, PBW elements and functionals.

Schema (compact separators, fixed key order)::

    Poly        {"terms": [{"coeff": "p/q", "monomial": [[label, depth, exp], ...]}, ...]}
    UEAElement  {"terms": [{"coeff": "p/q", "word": [[label, depth], ...]}, ...]}
    LaurentUEA  {"u_powers": [{"power": -m, "value": <UEAElement>}, ...]}
    Functional  {"values": {label: "p/q", ...}}
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .foundations import Poly, VarId
from .liealg import LieAlgebra
from .loopv import PBW, LaurentUEA, UEAElement
from .mfshift import Functional


def _coeff(c: Fraction) -> str:
    return str(c)


def to_data(obj) -> Any:
    if isinstance(obj, UEAElement):
        labels = obj.ctx.algebra.labels
        return {"terms": [{"coeff": _coeff(c), "word": [[labels[v.gen], v.depth] for v in w]}
                          for w, c in obj.sorted_terms()]}
    if isinstance(obj, Poly):
        labels = obj.algebra.labels if obj.algebra is not None else None

        def name(v):
            return labels[v.gen] if labels else v.gen

        return {"terms": [{"coeff": _coeff(c), "monomial": [[name(v), v.depth, e] for v, e in m]}
                          for m, c in obj.sorted_terms()]}
    if isinstance(obj, LaurentUEA):
        return {"u_powers": [{"power": -m, "value": to_data(obj.coeffs[m])}
                             for m in sorted(obj.coeffs, reverse=True)]}
    if isinstance(obj, Functional):
        return {"values": {l: _coeff(v) for l, v in zip(obj.algebra.labels, obj.values)}}
    if isinstance(obj, Fraction):
        return _coeff(obj)
    if isinstance(obj, dict):
        return {k: to_data(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_data(v) for v in obj]
    return obj


def dumps(data) -> str:
    return json.dumps(data, separators=(",", ":"), ensure_ascii=False)


def serialize(obj, fmt: str = "json") -> bytes:
    if fmt == "json":
        return dumps(to_data(obj)).encode("utf-8")
    if fmt == "text":
        return str(obj).encode("utf-8")
    raise ValueError("unknown format %r" % fmt)


def _gen(algebra: LieAlgebra, name) -> int:
    return name if isinstance(name, int) else algebra.index(name)


def poly_from_data(data, algebra: LieAlgebra) -> Poly:
    terms = {}
    for t in data["terms"]:
        mono = tuple(sorted((VarId(d, _gen(algebra, l)), e) for l, d, e in t["monomial"]))
        terms[mono] = Fraction(t["coeff"])
    return Poly(terms, algebra)


def uea_from_data(data, ctx: PBW) -> UEAElement:
    terms = {}
    for t in data["terms"]:
        w = tuple(VarId(d, _gen(ctx.algebra, l)) for l, d in t["word"])
        terms[w] = terms.get(w, 0) + Fraction(t["coeff"])
    return UEAElement(ctx, terms)


def laurent_from_data(data, ctx: PBW) -> LaurentUEA:
    return LaurentUEA(ctx, {-p["power"]: uea_from_data(p["value"], ctx) for p in data["u_powers"]})


def functional_from_data(data, algebra: LieAlgebra) -> Functional:
    vals = data["values"] if isinstance(data, dict) and "values" in data else data
    if isinstance(vals, dict):
        out = [Fraction(0)] * algebra.dim
        for l, v in vals.items():
            out[algebra.index(l)] = Fraction(v)
        return Functional(algebra, out)
    return Functional(algebra, [Fraction(v) for v in vals])


def loads_poly(raw, algebra: LieAlgebra) -> Poly:
    return poly_from_data(json.loads(raw), algebra)


def loads_uea(raw, ctx: PBW) -> UEAElement:
    return uea_from_data(json.loads(raw), ctx)
