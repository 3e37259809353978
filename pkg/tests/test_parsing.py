import json
import random
from fractions import Fraction

import pytest

from bidiff.errors import ParseError
from bidiff.output import poly_from_json, poly_to_json, space_from_var_names
from bidiff.parsing import parse_poly, poly_to_latex, poly_to_text
from bidiff.poly import MPoly, VarSpace
from bidiff.scalars import GaussianRational, PARAMS, ParamScalar

SP = VarSpace(("xi", 1), ("zeta", 1))
BIG = VarSpace(("x", 2), ("y", 2), ("xi", 2), ("zeta", 2))


def test_basic_parse():
    q = parse_poly("(s+1)*zeta1 - (t+1)*xi1", SP)
    assert poly_to_text(q) == "-(t + 1)*xi1 + (s + 1)*zeta1"
    assert parse_poly(poly_to_text(q), SP) == q


def test_coefficient_literals():
    assert poly_to_text(parse_poly("3/4*i*xi1", SP)) == "3/4*i*xi1"
    assert poly_to_text(parse_poly("i", SP)) == "i"
    assert poly_to_text(parse_poly("2 - i", SP)) == "(2 - i)"
    assert parse_poly(" 1/2 * xi1 ^ 2 ", SP) == parse_poly("1/2*xi1^2", SP)


def test_whitespace_insensitive():
    a = parse_poly("lambda*xi1-mu*zeta1", SP)
    b = parse_poly("  lambda * xi1 -   mu *  zeta1 ", SP)
    assert a == b


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as exc:
        parse_poly("x1 +", VarSpace(("x", 1)))
    assert exc.value.pos == 4
    with pytest.raises(ParseError):
        parse_poly("", SP)
    with pytest.raises(ParseError):
        parse_poly("xi1 xi1", SP)  # implicit multiplication is not allowed
    with pytest.raises(ParseError):
        parse_poly("foo1", SP)
    with pytest.raises(ParseError):
        parse_poly("xi9", SP)  # index out of range
    with pytest.raises(ParseError):
        parse_poly("xi1^t", SP)
    with pytest.raises(ParseError):
        parse_poly("(xi1", SP)


def test_unary_minus_and_parens():
    assert parse_poly("-xi1", SP) == -parse_poly("xi1", SP)
    assert parse_poly("-(xi1 - zeta1)*xi1", SP) == parse_poly("zeta1*xi1 - xi1^2", SP)
    assert parse_poly("(s + 1)^2", SP).constant_value() is not None


def _random_poly(rng, space):
    out = MPoly.zero(space)
    for _ in range(rng.randint(0, 6)):
        e = tuple(rng.randint(0, 3) for _ in range(space.nvars))
        pe = [0] * len(PARAMS)
        for _ in range(rng.randint(0, 2)):
            pe[rng.randrange(len(PARAMS))] += 1
        g = GaussianRational(
            Fraction(rng.randint(-5, 5), rng.choice((1, 2, 3))),
            Fraction(rng.randint(-3, 3), rng.choice((1, 2))),
        )
        if not g:
            continue
        out = out + MPoly.monomial(space, e, ParamScalar({tuple(pe): g}))
    return out


def test_text_roundtrip_corpus():
    rng = random.Random(42)
    for _ in range(120):
        space = rng.choice((SP, BIG, VarSpace(("x", 3))))
        q = _random_poly(rng, space)
        assert parse_poly(poly_to_text(q), space) == q


def test_json_roundtrip_corpus():
    rng = random.Random(43)
    for _ in range(120):
        space = rng.choice((SP, BIG, VarSpace(("y", 2))))
        q = _random_poly(rng, space)
        assert poly_from_json(poly_to_json(q)) == q


def test_json_schema_shape():
    q = parse_poly("(s+1)*zeta1 - (t+1)*xi1", SP)
    doc = json.loads(poly_to_json(q))
    assert list(doc.keys()) == ["vars", "params", "terms"]
    assert doc["vars"] == ["xi1", "zeta1"]
    assert doc["params"] == list(PARAMS)
    first = doc["terms"][0]
    assert list(first.keys()) == ["exps", "coeff"]
    coeff_term = first["coeff"]["terms"][0]
    assert list(coeff_term.keys()) == ["pexps", "re", "im"]
    assert isinstance(coeff_term["re"], str)


def test_space_from_var_names():
    sp = space_from_var_names(["x1", "x2", "xi1", "xi2"])
    assert sp == VarSpace(("x", 2), ("xi", 2))
    with pytest.raises(ValueError):
        space_from_var_names(["q1"])


def test_latex_output():
    q = parse_poly("(s+1)*zeta1 - 1/2*xi1^2", SP)
    tex = poly_to_latex(q)
    assert "\\xi_{1}^{2}" in tex and "\\zeta_{1}" in tex
    assert "\\frac{1}{2}" in tex
    lam = parse_poly("lambda*xi1", SP)
    assert "\\lambda" in poly_to_latex(lam)


def test_zero_prints_as_zero():
    assert poly_to_text(MPoly.zero(SP)) == "0"
    assert parse_poly("0", SP).is_zero()
