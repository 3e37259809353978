"""Deterministic output documents: text, LaTeX and JSON round-trips.

JSON schema (stable key order, exact rationals as strings)::

    {"vars": [...], "params": [...],
     "terms": [{"exps": {var: int},
                "coeff": {"terms": [{"pexps": {param: int},
                                     "re": "a/b", "im": "c/d"}]}}]}

Terms appear in canonical order (graded lex, leading first), exponent maps
list only nonzero entries in variable order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .parsing import parse_poly, poly_to_latex, poly_to_text
from .poly import MPoly, VarSpace
from .scalars import GaussianRational, PARAMS, ParamScalar

FORMATS = ("text", "json", "latex")


@dataclass(frozen=True)
class OutputDocument:
    format: str
    payload: str

    def __str__(self):
        return self.payload


def _ps_to_json(c: ParamScalar) -> dict:
    terms = []
    for e, g in sorted(c.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
        pexps = {name: k for name, k in zip(PARAMS, e) if k}
        terms.append({"pexps": pexps, "re": str(g.re), "im": str(g.im)})
    return {"terms": terms}


def poly_to_json_dict(p: MPoly) -> dict:
    terms = []
    for e, c in p.sorted_terms():
        exps = {name: k for name, k in zip(p.space.names, e) if k}
        terms.append({"exps": exps, "coeff": _ps_to_json(c)})
    return {"vars": list(p.space.names), "params": list(PARAMS), "terms": terms}


def poly_to_json(p: MPoly) -> str:
    return json.dumps(poly_to_json_dict(p), separators=(", ", ": "))


_VAR_NAME = re.compile(r"(xi|zeta|x|y)(\d+)")


def space_from_var_names(names) -> VarSpace:
    """Reconstruct a VarSpace from its variable name list."""
    order: list[str] = []
    dims: dict[str, int] = {}
    for v in names:
        m = _VAR_NAME.fullmatch(v)
        if not m:
            raise ValueError(f"bad variable name {v!r}")
        block, idx = m.group(1), int(m.group(2))
        if block not in dims:
            order.append(block)
            dims[block] = idx
        else:
            dims[block] = max(dims[block], idx)
    return VarSpace(*((b, dims[b]) for b in order))


def poly_from_json_dict(doc: dict) -> MPoly:
    space = space_from_var_names(doc["vars"])
    terms = {}
    for item in doc["terms"]:
        exps = [0] * space.nvars
        for v, k in item["exps"].items():
            exps[space.var_index(v)] = int(k)
        pterms = {}
        for pt in item["coeff"]["terms"]:
            pe = [0] * len(PARAMS)
            for name, k in pt["pexps"].items():
                pe[PARAMS.index(name)] = int(k)
            pterms[tuple(pe)] = GaussianRational(Fraction(pt["re"]), Fraction(pt["im"]))
        terms[tuple(exps)] = ParamScalar(pterms)
    return MPoly(space, terms)


def poly_from_json(text: str) -> MPoly:
    return poly_from_json_dict(json.loads(text))


def render_poly(p: MPoly, fmt: str) -> OutputDocument:
    if fmt == "text":
        return OutputDocument("text", poly_to_text(p))
    if fmt == "latex":
        return OutputDocument("latex", poly_to_latex(p))
    if fmt == "json":
        return OutputDocument("json", poly_to_json(p))
    raise ValueError(f"unknown format {fmt!r}")


def parse_any(text: str, space: VarSpace) -> MPoly:
    """Parse either the text grammar or the JSON document form."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return poly_from_json(text)
    return parse_poly(text, space)
