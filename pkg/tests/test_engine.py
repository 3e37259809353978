import os
from fractions import Fraction

import pytest

import bidiff.engine as engine
from bidiff.engine import (
    bidiff_apply,
    bidiff_operator,
    check_homogeneity,
    check_rotation_invariance,
    check_sl2_covariance,
    conjugated_operator,
    covariance_checks,
    dual_pair_space,
    iterate_source,
    recurrence_c,
    rodrigues_c,
    source_operator,
    symbol_b,
)
from bidiff.jordan import JordanAlgebraSpec, cayley_difference
from bidiff.parsing import parse_poly
from bidiff.poly import MPoly, VarSpace
from bidiff.scalars import GR_I, GR_MINUS_I, param, ps
from bidiff.weyl import WeylOperator, dual_sigma, eval_base_zero, quantize, sigma

R1 = JordanAlgebraSpec.rank1()
Q2 = JordanAlgebraSpec.quadratic(2)
M2 = JordanAlgebraSpec.matrix2()
PAIR1 = VarSpace(("xi", 1), ("zeta", 1))


def test_rodrigues_base_case():
    for J in (R1, Q2, M2):
        assert rodrigues_c(J, 0).value == MPoly.const(dual_pair_space(J), 1)
        assert recurrence_c(J, 0).value == MPoly.const(dual_pair_space(J), 1)


def test_rodrigues_rank1_k1():
    assert rodrigues_c(R1, 1).value == parse_poly("(s+1)*zeta1 - (t+1)*xi1", PAIR1)


def test_recurrence_rank1_k2():
    # two power-rule passes: (s+1)(s+2) zeta^2 - 2(s+2)(t+2) xi zeta + (t+1)(t+2) xi^2
    want = parse_poly(
        "(s+1)*(s+2)*zeta1^2 - 2*(s+2)*(t+2)*xi1*zeta1 + (t+1)*(t+2)*xi1^2", PAIR1
    )
    assert recurrence_c(R1, 2).value == want
    assert rodrigues_c(R1, 2).value == want


def test_symbol_b_rank1():
    assert symbol_b(R1, 1).value == parse_poly("lambda*zeta1 - mu*xi1", PAIR1)


def test_symbol_b_quadratic():
    n = 2
    sp = dual_pair_space(Q2)
    lam, mu = param("lambda"), param("mu")
    a = lam.scale(2) - ps(n) + ps(2)
    b = mu.scale(2) - ps(n) + ps(2)
    det_xi = Q2.det_poly(sp, "xi")
    det_zeta = Q2.det_poly(sp, "zeta")
    dot = sum(
        (MPoly.var(sp, f"xi{j+1}") * MPoly.var(sp, f"zeta{j+1}") for j in range(n)),
        MPoly.zero(sp),
    )
    want = (
        det_zeta.scale(lam.scale(2) * a)
        - dot.scale((a * b).scale(2))
        + det_xi.scale(mu.scale(2) * b)
    )
    assert symbol_b(Q2, 1).value == want


def test_route_agreement_small():
    for J, kmax in ((R1, 5), (Q2, 3), (M2, 2)):
        for k in range(kmax + 1):
            assert rodrigues_c(J, k).value == recurrence_c(J, k).value


def test_source_symbols_match_printed_operators():
    rc = source_operator("rc")
    full = rc.space
    want = parse_poly("-(x1 - y1)*xi1*zeta1 + i*(-mu*xi1 + lambda*zeta1)", full)
    assert rc.symbol == want
    # operator form: (x - y) d^2/dxdy - mu d/dx + lambda d/dy
    xy = VarSpace(("x", 1), ("y", 1))
    want_op = WeylOperator(
        xy,
        {
            (1, 1): parse_poly("x1 - y1", xy),
            (1, 0): MPoly.const(xy, -param("mu")),
            (0, 1): MPoly.const(xy, param("lambda")),
        },
    )
    assert rc.operator == want_op
    assert sigma(rc.operator) == rc.symbol


def test_juhl_source_symbol():
    src = source_operator("juhl", 3)
    full = src.space
    want = parse_poly("-x3*(xi1^2 + xi2^2 + xi3^2) + i*(2*lambda - 1)*xi3", full)
    assert src.symbol == want
    # operator: x_n Laplacian + (2 lambda - n + 2) d/dx_n
    sp = VarSpace(("x", 3))
    x3 = MPoly.var(sp, "x3")
    c = param("lambda").scale(2) - ps(1)
    want_op = WeylOperator(
        sp, {(2, 0, 0): x3, (0, 2, 0): x3, (0, 0, 2): x3, (0, 0, 1): MPoly.const(sp, c)}
    )
    assert src.operator == want_op


def test_conformal_source_operator_matches_hand_form():
    n = 2
    src = source_operator("conformal", n)
    assert sigma(src.operator) == src.symbol
    # spot check two coefficients of the normal form
    op = src.operator
    xy = op.space
    lam = param("lambda")
    a = lam.scale(2) - ps(n) + ps(2)
    # pure 4th derivative d^2/dx1^2 d^2/dy1^2 carries |x-y|^2
    alpha = tuple([2, 0, 2, 0])
    q_xy = parse_poly("(x1 - y1)^2 + (x2 - y2)^2", xy)
    assert op.terms[alpha] == q_xy
    # third-order term 2(2 lambda - n + 2)(x1 - y1) d/dx1 Delta_y
    alpha3 = (1, 0, 2, 0)
    assert op.terms[alpha3] == parse_poly("x1 - y1", xy).scale(a.scale(2))


def test_iterate_source_examples():
    assert iterate_source("rc", None, 0) == MPoly.const(PAIR1, 1)
    assert iterate_source("rc", None, 1) == parse_poly(
        "i*(lambda*zeta1 - mu*xi1)", PAIR1
    )
    sp3 = VarSpace(("xi", 3))
    assert iterate_source("juhl", 3, 1) == parse_poly("i*(2*lambda - 1)*xi3", sp3)


def test_rc_matches_det_power_route():
    for k in range(5):
        assert iterate_source("rc", None, k) == symbol_b(R1, k).value.scale(GR_I ** k)


def test_conjugated_operator_rank1():
    D = conjugated_operator(R1)
    sp = dual_pair_space(R1)
    # D = (1/i) [ (s zeta - t xi) + xi zeta (d_xi - d_zeta) ]
    want = WeylOperator(
        sp,
        {
            (0, 0): parse_poly("-i*(s*zeta1 - t*xi1)", sp),
            (1, 0): parse_poly("-i*xi1*zeta1", sp),
            (0, 1): parse_poly("i*xi1*zeta1", sp),
        },
    )
    assert D == want
    full = VarSpace(("x", 1), ("y", 1), ("xi", 1), ("zeta", 1))
    d_sym = dual_sigma(D, full)
    shifted = rodrigues_c(R1, 1).value.substitute_params(
        {"s": param("s") - ps(1), "t": param("t") - ps(1)}
    )
    assert eval_base_zero(d_sym) == shifted.scale(GR_MINUS_I)


def test_conjugated_operator_coefficients_polynomial_in_parameters():
    for J in (R1, Q2):
        D = conjugated_operator(J)
        for p in D.terms.values():
            for coeff in p.terms.values():
                assert set(coeff.parameters_used()) <= {"s", "t"}


def test_conjugation_identity_integer_exponents():
    # rank1, s = t = 3: both sides applied to xi^3 zeta^3 * phi
    J = R1
    sp = dual_pair_space(J)
    s_val = 3
    detx = J.det_poly(sp, "xi")
    dety = J.det_poly(sp, "zeta")
    cay = cayley_difference(J, sp, "xi", "zeta")
    D = conjugated_operator(J).map_coeffs(
        lambda p: p.substitute_params({"s": s_val, "t": s_val})
    )
    phi = parse_poly("xi1^2*zeta1 + 2*xi1 - 1/3", sp)
    lhs = cay.apply(detx ** s_val * dety ** s_val * phi).scale(GR_MINUS_I)
    rhs = detx ** (s_val - 1) * dety ** (s_val - 1) * D.apply(phi)
    assert lhs == rhs


def test_bidiff_apply_examples():
    xsp = VarSpace(("x", 1))
    ysp = VarSpace(("y", 1))
    f_x = MPoly.var(xsp, "x1")
    g_one = MPoly.const(ysp, 1)
    assert bidiff_apply(R1, 1, None, None, f_x, g_one) == MPoly.const(
        xsp, -param("mu")
    )
    assert bidiff_apply(R1, 1, None, None, MPoly.const(xsp, 1), g_one).is_zero()
    g_y = MPoly.var(ysp, "y1")
    assert bidiff_apply(R1, 1, 2, 3, f_x, g_y) == parse_poly("-x1", xsp)


def test_bidiff_apply_juhl_style_identity():
    # order-1 rank-one operator on f=x, g=x gives (lambda - mu) x
    xsp = VarSpace(("x", 1))
    got = bidiff_apply(R1, 1, None, None, MPoly.var(xsp, "x1"), MPoly.var(VarSpace(("y", 1)), "y1"))
    want = MPoly.var(xsp, "x1").scale(param("lambda") - param("mu"))
    assert got == want


def test_bidiff_operator_constant_coefficients():
    op = bidiff_operator(Q2, 2)
    assert op.is_constant_coefficient()
    assert op.order() == 4


def test_covariance_checks_pass():
    for J, k in ((R1, 3), (Q2, 2), (M2, 2)):
        results = covariance_checks(J, k)
        assert all(r.passed for r in results), [r.line() for r in results]


def test_homogeneity_matrix2():
    assert check_homogeneity(M2, 2).passed
    assert rodrigues_c(M2, 2).value.is_homogeneous(4)


def test_sl2_covariance_small():
    for k in range(4):
        assert check_sl2_covariance(k).passed


def test_rotation_invariance_small():
    for k in range(3):
        assert check_rotation_invariance(Q2, k).passed


def test_rotation_check_rejects_minkowski():
    with pytest.raises(ValueError):
        check_rotation_invariance(JordanAlgebraSpec.quadratic(2, (1, -1)), 1)


def test_symbol_coefficients_polynomial_in_parameters():
    for J, k in ((R1, 4), (Q2, 2), (M2, 2)):
        c = rodrigues_c(J, k).value
        for coeff in c.terms.values():
            assert set(coeff.parameters_used()) <= {"s", "t"}


def test_minkowski_integer_oracle():
    from bidiff.verify import oracle_c_integer, _symbolic_c_at

    J = JordanAlgebraSpec.quadratic(2, (1, -1))
    for k in (1, 2):
        for (a, b) in ((J.r * k, J.r * k), (J.r * k + 1, J.r * k + 2)):
            assert oracle_c_integer(J, k, a, b) == _symbolic_c_at(J, k, a, b)


def test_minkowski_routes_agree_and_boost_invariance():
    # the identity suite is signature independent; invariance holds under a
    # rational hyperbolic rotation preserving x1^2 - x2^2
    J = JordanAlgebraSpec.quadratic(2, (1, -1))
    for k in range(3):
        assert rodrigues_c(J, k).value == recurrence_c(J, k).value
    c = rodrigues_c(J, 2).value
    sp = c.space
    boost = {}
    for block in ("xi", "zeta"):
        v1 = MPoly.var(sp, f"{block}1")
        v2 = MPoly.var(sp, f"{block}2")
        boost[f"{block}1"] = v1.scale(Fraction(5, 4)) + v2.scale(Fraction(3, 4))
        boost[f"{block}2"] = v1.scale(Fraction(3, 4)) + v2.scale(Fraction(5, 4))
    assert c.substitute_vars(boost) == c


def test_cache_transparency(monkeypatch):
    engine.clear_cache()
    with_cache = rodrigues_c(R1, 3).value
    monkeypatch.setenv("BIDIFF_NO_CACHE", "1")
    engine.clear_cache()
    without_cache = rodrigues_c(R1, 3).value
    assert with_cache == without_cache
    monkeypatch.delenv("BIDIFF_NO_CACHE")
