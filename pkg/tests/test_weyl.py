import random

import pytest

from bidiff.parsing import parse_poly
from bidiff.poly import MPoly, VarSpace
from bidiff.scalars import GR_I, GR_MINUS_I, param, ps
from bidiff.verify import random_poly, random_weyl_operator
from bidiff.weyl import (
    WeylOperator,
    bidiff_symbol,
    dual_quantize,
    dual_sigma,
    eval_base_zero,
    flat,
    quantize,
    sharp,
    sigma,
)

X1 = VarSpace(("x", 1))
FULL1 = X1.doubled()


def sym(text, space=FULL1):
    return parse_poly(text, space)


def test_sigma_basics():
    # d^alpha has symbol (i xi)^alpha; multiplication by x stays x
    d = WeylOperator(X1, {(2,): MPoly.const(X1, 1)})
    assert sigma(d) == sym("-xi1^2")
    m = WeylOperator(X1, {(0,): MPoly.var(X1, "x1")})
    assert sigma(m) == sym("x1")
    xd = WeylOperator(X1, {(1,): MPoly.var(X1, "x1")})
    assert sigma(xd) == sym("i*x1*xi1")


def test_quantize_examples():
    assert quantize(sym("i*xi1")) == WeylOperator(X1, {(1,): MPoly.const(X1, 1)})
    assert quantize(sym("1")) == WeylOperator.identity(X1)
    # last-variable operator: -x_n |xi|^2 + i(2 lambda - n + 2) xi_n quantizes
    # to x_n Laplacian + (2 lambda - n + 2) d/dx_n
    n = 3
    sp = VarSpace(("x", n))
    full = sp.doubled()
    c = param("lambda").scale(2) - ps(n) + ps(2)
    s = parse_poly("-x3*(xi1^2 + xi2^2 + xi3^2)", full) + MPoly.var(full, "xi3").scale(c).scale(GR_I)
    op = quantize(s)
    x3 = MPoly.var(sp, "x3")
    want = WeylOperator(
        sp,
        {
            (2, 0, 0): x3,
            (0, 2, 0): x3,
            (0, 0, 2): x3,
            (0, 0, 1): MPoly.const(sp, c),
        },
    )
    assert op == want
    assert sigma(op) == s


def test_sharp_examples():
    # (i xi) # x = i x xi + 1, read off from d/dx . x = 1 + x d/dx
    assert sharp(sym("i*xi1"), sym("x1")) == sym("i*x1*xi1 + 1")
    a = sym("x1^2*xi1 + i*xi1^2")
    assert sharp(a, sym("1")) == a


def test_flat_examples():
    assert flat(sym("x1"), sym("xi1^2")) == sym("x1*xi1^2 - 2*i*xi1")
    d = sym("x1*xi1^2 + i*x1^2")
    assert flat(sym("1"), d) == d


def test_duality_swap():
    e, d = sym("i*xi1"), sym("x1")
    assert sharp(e, d) == flat(d, e)
    assert sharp(e, d) == sym("i*x1*xi1 + 1")


def test_eval_base_zero():
    full = VarSpace(("x", 1), ("y", 1), ("xi", 1), ("zeta", 1))
    s = parse_poly("i*lambda*zeta1 - i*mu*xi1 + (x1 - y1)*xi1*zeta1", full)
    got = eval_base_zero(s)
    want = parse_poly("i*lambda*zeta1 - i*mu*xi1", VarSpace(("xi", 1), ("zeta", 1)))
    assert got == want
    const = parse_poly("3/2", full)
    assert eval_base_zero(const) == parse_poly("3/2", VarSpace(("xi", 1), ("zeta", 1)))


def test_eval_base_zero_applies_dual_operator():
    # d*(xi, x) = xi x corresponds to xi (1/i) d/dxi; applied to xi^2 gives (2/i) xi^2
    dstar = sym("xi1*x1")
    p = sym("xi1^2")
    got = eval_base_zero(flat(dstar, p))
    dual_only = VarSpace(("xi", 1))
    want = parse_poly("-2*i*xi1^2", dual_only)
    assert got == want
    op = dual_quantize(dstar)
    assert op.apply(parse_poly("xi1^2", dual_only)) == want


def test_dual_sigma_roundtrip():
    dual_only = VarSpace(("xi", 1))
    op = WeylOperator(
        dual_only,
        {(1,): MPoly.var(dual_only, "xi1"), (0,): MPoly.const(dual_only, ps(2))},
    )
    s = dual_sigma(op, FULL1)
    assert s == sym("i*x1*xi1 + 2")
    assert dual_quantize(s) == op


def test_apply_examples():
    xd = WeylOperator(X1, {(1,): MPoly.var(X1, "x1")})
    assert xd.apply(parse_poly("x1^2", X1)) == parse_poly("2*x1^2", X1)
    ident = WeylOperator.identity(X1)
    assert ident.apply(parse_poly("x1^3", X1)) == parse_poly("x1^3", X1)


def test_compose_matches_sharp_seeded(rng):
    for _ in range(60):
        nv = rng.choice((1, 2))
        sp = VarSpace(("x", nv))
        d = random_weyl_operator(rng, sp, 2, 2)
        f = random_weyl_operator(rng, sp, 2, 2)
        assert sigma(d.compose(f)) == sharp(sigma(d), sigma(f))
        assert quantize(sigma(d)) == d
        g = random_poly(rng, sp, 3, 3)
        assert d.compose(f).apply(g) == d.apply(f.apply(g))


def test_flat_base_zero_property_seeded(rng):
    for _ in range(60):
        nv = rng.choice((1, 2))
        full = VarSpace(("x", nv)).doubled()
        dual_only = full.subspace(("xi",))
        dstar = random_poly(rng, full, 3, 4)
        p = random_poly(rng, dual_only, 3, 3)
        lhs = eval_base_zero(flat(dstar, p.embed(full)))
        rhs = dual_quantize(dstar).apply(p)
        assert lhs == rhs


def test_bidiff_symbol():
    xy = VarSpace(("x", 1), ("y", 1))
    dx_minus_dy = WeylOperator(
        xy, {(1, 0): MPoly.const(xy, 1), (0, 1): MPoly.const(xy, -1)}
    )
    full = xy.doubled()
    assert bidiff_symbol(dx_minus_dy) == parse_poly("i*xi1 - i*zeta1", full)
    c = WeylOperator(xy, {(0, 0): MPoly.const(xy, ps(5))})
    assert bidiff_symbol(c) == parse_poly("5", full)
    # coefficient (x - y) restricts to zero on the diagonal
    op = WeylOperator(xy, {(1, 0): parse_poly("x1 - y1", xy)})
    assert bidiff_symbol(op).is_zero()
