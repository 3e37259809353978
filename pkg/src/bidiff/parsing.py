"""Text grammar for polynomials: parser and deterministic printers.

Grammar (whitespace insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := '(' expr ')' | INT ['/' INT] | 'i' | parameter | variable

Parameters are ``s t lambda mu alpha beta gamma``; variables are block name
plus 1-based index (``x1``, ``y2``, ``xi1``, ``zeta3``).  Multiplication is
always explicit.  The printers emit terms in canonical order (graded lex,
leading term first), and ``parse(print(p)) == p`` holds for every polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .poly import MPoly, VarSpace, grlex_key
from .scalars import (
    GR_I,
    GR_MINUS_ONE,
    GR_ONE,
    GaussianRational,
    PARAMS,
    ParamScalar,
    ps,
)

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+\d*)|(?P<op>[-+*^/()]))")

LATEX_PARAM = {
    "s": "s",
    "t": "t",
    "lambda": r"\lambda",
    "mu": r"\mu",
    "alpha": r"\alpha",
    "beta": r"\beta",
    "gamma": r"\gamma",
}
LATEX_BLOCK = {"x": "x", "y": "y", "xi": r"\xi", "zeta": r"\zeta"}


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip():
                    raise ParseError(
                        "unexpected character", text, pos + len(rest) - len(rest.lstrip())
                    )
                break
            kind = m.lastgroup
            self.items.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.items):
            return self.items[self.i]
        return (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", self.text, pos)


def _classify_name(name: str, space: VarSpace, text: str, pos: int):
    if name == "i":
        return ("i", None)
    if name in PARAMS:
        return ("param", name)
    m = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
    if m:
        block, idx = m.group(1), int(m.group(2))
        var = f"{block}{idx}"
        if var in space.index:
            return ("var", var)
    raise ParseError(f"unknown name {name!r}", text, pos)


def _parse_atom(toks: _Tokens, space: VarSpace) -> MPoly:
    kind, value, pos = toks.next()
    if kind == "op" and value == "(":
        inner = _parse_expr(toks, space)
        toks.expect_op(")")
        return inner
    if kind == "int":
        num = int(value)
        k2, v2, _ = toks.peek()
        if k2 == "op" and v2 == "/":
            toks.next()
            k3, v3, p3 = toks.next()
            if k3 != "int":
                raise ParseError("expected integer denominator", toks.text, p3)
            return MPoly.const(space, Fraction(num, int(v3)))
        return MPoly.const(space, num)
    if kind == "name":
        what, which = _classify_name(value, space, toks.text, pos)
        if what == "i":
            return MPoly.const(space, GR_I)
        if what == "param":
            return MPoly.const(space, ParamScalar.param(which))
        return MPoly.var(space, which)
    raise ParseError("expected a value", toks.text, pos)


def _parse_factor(toks: _Tokens, space: VarSpace) -> MPoly:
    atom = _parse_atom(toks, space)
    kind, value, _ = toks.peek()
    if kind == "op" and value == "^":
        toks.next()
        k2, v2, p2 = toks.next()
        if k2 != "int":
            raise ParseError("expected integer exponent", toks.text, p2)
        return atom ** int(v2)
    return atom


def _parse_term(toks: _Tokens, space: VarSpace) -> MPoly:
    out = _parse_factor(toks, space)
    while True:
        kind, value, _ = toks.peek()
        if kind == "op" and value == "*":
            toks.next()
            out = out * _parse_factor(toks, space)
        else:
            return out


def _parse_expr(toks: _Tokens, space: VarSpace) -> MPoly:
    kind, value, _ = toks.peek()
    sign = 1
    if kind == "op" and value in "+-":
        toks.next()
        sign = -1 if value == "-" else 1
    out = _parse_term(toks, space)
    if sign < 0:
        out = -out
    while True:
        kind, value, pos = toks.peek()
        if kind == "op" and value in "+-":
            toks.next()
            nxt = _parse_term(toks, space)
            out = out - nxt if value == "-" else out + nxt
        elif kind is None:
            return out
        elif kind == "op" and value == ")":
            return out
        else:
            raise ParseError("expected operator", toks.text, pos)


def parse_poly(text: str, space: VarSpace) -> MPoly:
    """Parse a polynomial over the given variable space."""
    toks = _Tokens(text)
    if toks.peek()[0] is None:
        raise ParseError("empty input", text, 0)
    out = _parse_expr(toks, space)
    kind, _, pos = toks.peek()
    if kind is not None:
        raise ParseError("trailing input", text, pos)
    return out


def parse_coefficient(text: str) -> ParamScalar:
    """Parse a variable-free expression (numbers, i, parameters)."""
    p = parse_poly(text, VarSpace())
    c = p.constant_value()
    assert c is not None
    return c


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _frac_text(f: Fraction) -> str:
    return str(f)


def _frac_latex(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    return sign + r"\frac{%d}{%d}" % (abs(f.numerator), f.denominator)


def _gr_sign(g: GaussianRational) -> int:
    if g.a != 0:
        return 1 if g.a > 0 else -1
    return 1 if g.b > 0 else -1


def _gr_factors(g: GaussianRational, latex: bool) -> list[str]:
    """Factors of a positive-display pure-real or pure-imaginary value."""
    frac = _frac_latex if latex else _frac_text
    if g.b == 0:
        return [frac(g.re)]
    if g.a == 0:
        out = [] if g.im == 1 else [frac(g.im)]
        out.append("i")
        return out
    re_txt = frac(g.re)
    im_txt = ("" if abs(g.im) == 1 else frac(abs(g.im)) + ("" if latex else "*")) + "i"
    joiner = " + " if g.b > 0 else " - "
    return ["(" + re_txt + joiner + im_txt + ")"]


def _param_monomial_factors(exps: tuple[int, ...], latex: bool) -> list[str]:
    out = []
    for name, k in zip(PARAMS, exps):
        if not k:
            continue
        token = LATEX_PARAM[name] if latex else name
        if k == 1:
            out.append(token)
        else:
            out.append(f"{token}^{{{k}}}" if latex else f"{token}^{k}")
    return out


def _ps_term_factors(exps, g: GaussianRational, latex: bool) -> tuple[int, list[str]]:
    """(display sign, factors) for one parameter-monomial term."""
    sign = _gr_sign(g)
    gpos = -g if sign < 0 else g
    mono = _param_monomial_factors(exps, latex)
    if gpos == GR_ONE and mono:
        return sign, mono
    return sign, _gr_factors(gpos, latex) + mono


def _join_factors(factors: list[str], latex: bool) -> str:
    if latex:
        return " ".join(factors) if factors else "1"
    return "*".join(factors) if factors else "1"


def _ps_sorted(c: ParamScalar):
    return sorted(c.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)


def param_scalar_to_text(c: ParamScalar, latex: bool = False) -> str:
    """Render a ParamScalar as a standalone sum."""
    if c.is_zero():
        return "0"
    parts = []
    for j, (e, g) in enumerate(_ps_sorted(c)):
        sign, factors = _ps_term_factors(e, g, latex)
        body = _join_factors(factors, latex)
        if j == 0:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append((" - " if sign < 0 else " + ") + body)
    return "".join(parts)


def _var_monomial_factors(space: VarSpace, exps: tuple[int, ...], latex: bool) -> list[str]:
    out = []
    for (name, dim) in space.blocks:
        start = space.block_start[name]
        token = LATEX_BLOCK[name] if latex else name
        for j in range(dim):
            k = exps[start + j]
            if not k:
                continue
            v = f"{token}_{{{j+1}}}" if latex else f"{token}{j+1}"
            if k == 1:
                out.append(v)
            else:
                out.append(f"{v}^{{{k}}}" if latex else f"{v}^{k}")
    return out


def _poly_term_text(space, exps, coeff: ParamScalar, latex: bool) -> tuple[int, str]:
    """(display sign, body) for one polynomial term, sign factored out."""
    mono = _var_monomial_factors(space, exps, latex)
    terms = _ps_sorted(coeff)
    if len(terms) == 1:
        e, g = terms[0]
        sign, cfac = _ps_term_factors(e, g, latex)
        if cfac == ["1"] and mono:
            cfac = []
        if not mono and not cfac:
            return sign, "1"
        return sign, _join_factors(cfac + mono, latex)
    # Multi-term coefficient: factor out -1 when every term displays negative.
    signs = {_gr_sign(g) for _, g in terms}
    if signs == {-1}:
        inner = param_scalar_to_text(-coeff, latex)
        sign = -1
    else:
        inner = param_scalar_to_text(coeff, latex)
        sign = 1
    if not mono:
        return sign, inner if len(terms) == 1 else f"({inner})"
    return sign, _join_factors([f"({inner})"] + mono, latex)


def poly_to_text(p: MPoly, latex: bool = False) -> str:
    """Canonical text form: graded-lex term order, leading term first."""
    if p.is_zero():
        return "0"
    parts = []
    for j, (e, c) in enumerate(p.sorted_terms()):
        sign, body = _poly_term_text(p.space, e, c, latex)
        if j == 0:
            parts.append(("-" if sign < 0 else "") + body)
        else:
            parts.append((" - " if sign < 0 else " + ") + body)
    return "".join(parts)


def poly_to_latex(p: MPoly) -> str:
    return poly_to_text(p, latex=True)
