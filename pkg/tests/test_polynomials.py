from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bidiff.errors import DivisibilityViolation
from bidiff.parsing import parse_poly
from bidiff.poly import MPoly, VarSpace
from bidiff.scalars import GR_I, GaussianRational, param, ps


SP = VarSpace(("xi", 1), ("zeta", 1))
XY = VarSpace(("x", 1), ("y", 1))


def P(text, space=SP):
    return parse_poly(text, space)


def test_varspace_validation():
    with pytest.raises(ValueError):
        VarSpace(("w", 1))
    with pytest.raises(ValueError):
        VarSpace(("x", 1), ("x", 2))
    with pytest.raises(ValueError):
        VarSpace(("x", 0))
    sp = VarSpace(("x", 2), ("xi", 2))
    assert sp.names == ("x1", "x2", "xi1", "xi2")
    assert sp.dual_pairs() == ((0, 2), (1, 3))


def test_arith_examples():
    assert P("xi1 + zeta1") * P("xi1 - zeta1") == P("xi1^2 - zeta1^2")
    assert P("xi1").scale(GR_I) == P("i*xi1")
    assert P("x1 - y1", XY) * P("x1 - y1", XY) == P("x1^2 - 2*x1*y1 + y1^2", XY)


def test_space_mismatch():
    with pytest.raises(ValueError):
        P("xi1") + P("x1", XY)


def test_partial_examples():
    assert P("xi1^2*zeta1").partial("xi1") == P("2*xi1*zeta1")
    sp = VarSpace(("xi", 2))
    q = parse_poly("xi1^2 + xi2^2", sp)
    assert q.partial("xi1") == parse_poly("2*xi1", sp)
    spx = VarSpace(("x", 3))
    f = parse_poly("x3*(x1^2 + x2^2 + x3^2)", spx)
    # product rule: quadratic form plus 2 x3^2
    assert f.partial("x3") == parse_poly("x1^2 + x2^2 + 3*x3^2", spx)
    with pytest.raises(KeyError):
        P("xi1").partial("x9")


def test_exact_div_examples():
    sp = VarSpace(("x", 4))
    det = parse_poly("x1*x4 - x2*x3", sp)
    assert (det * parse_poly("x1", sp)).exact_div(det) == parse_poly("x1", sp)
    assert P("xi1^2 - zeta1^2").exact_div(P("xi1 - zeta1")) == P("xi1 + zeta1")
    with pytest.raises(DivisibilityViolation):
        P("xi1^2 + zeta1^2").exact_div(P("xi1 - zeta1"))


def test_exact_div_requires_constant_leading_coefficient():
    d = P("xi1").scale(param("s"))
    with pytest.raises(ValueError):
        P("xi1^2").exact_div(d)


def test_substitute_vars_examples():
    q = P("xi1*zeta1")
    img = {"xi1": P("i*xi1"), "zeta1": P("i*zeta1")}
    assert q.substitute_vars(img) == P("-xi1*zeta1")
    v = P("xi1^2 + zeta1^2").substitute_vars(
        {"xi1": GaussianRational(Fraction(3, 5)), "zeta1": GaussianRational(Fraction(4, 5))}
    )
    assert v == P("1")
    w = parse_poly("x1^2", XY).substitute_vars(
        {"x1": parse_poly("x1 - y1", XY)}
    )
    assert w == parse_poly("x1^2 - 2*x1*y1 + y1^2", XY)


def test_homogeneity_queries():
    q = P("(s+1)*zeta1^2 - xi1*zeta1")
    assert q.is_homogeneous(2)
    assert not P("xi1 + xi1^2").is_homogeneous()
    assert q.degree_in_block("zeta") == 2
    assert q.degree() == 2


def test_embed_project_rename():
    f = parse_poly("x1^2", VarSpace(("x", 1)))
    big = f.embed(XY)
    assert big.space == XY
    assert big.project(VarSpace(("x", 1))) == f
    g = f.rename_blocks({"x": "y"})
    assert g.space == VarSpace(("y", 1))
    with pytest.raises(ValueError):
        parse_poly("x1*y1", XY).project(VarSpace(("x", 1)))


@st.composite
def polys(draw, space=SP):
    out = MPoly.zero(space)
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(0, 3)) for _ in range(space.nvars))
        num = draw(st.integers(-4, 4))
        den = draw(st.sampled_from((1, 2, 3)))
        im = draw(st.integers(-2, 2))
        c = GaussianRational(Fraction(num, den), im)
        if draw(st.booleans()):
            coeff = ps(c) * (param("s") + ps(draw(st.integers(0, 2))))
        else:
            coeff = ps(c)
        out = out + MPoly.monomial(space, e, coeff) if coeff else out
    return out


@settings(max_examples=50, deadline=None)
@given(polys(), polys())
def test_partials_commute(a, b):
    q = a * b
    assert q.partial("xi1").partial("zeta1") == q.partial("zeta1").partial("xi1")


@settings(max_examples=50, deadline=None)
@given(polys(), polys())
def test_div_after_mul_roundtrip(a, d):
    if d.is_zero():
        return
    le, lc = d.leading()
    if lc.constant_value() is None or not lc.constant_value():
        return
    assert (a * d).exact_div(d) == a


@settings(max_examples=50, deadline=None)
@given(polys(), polys())
def test_product_degree(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert (a * b).degree() <= a.degree() + b.degree()
    if a.is_homogeneous() and b.is_homogeneous() and not (a * b).is_zero():
        assert (a * b).is_homogeneous(a.degree() + b.degree())
