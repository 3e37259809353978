"""Classical orthogonal polynomials and the auxiliary symbol families.

Jacobi and Gegenbauer polynomials are produced by their Rodrigues formulas
with fully symbolic parameters (alpha, beta resp. lambda); the polynomial
variable is x1.  The auxiliary families mirror the engine's det-power
computations in low rank:

  * q_l(alpha, beta)     -- rank-one pair family on (xi1, zeta1),
  * p_k(alpha, beta)     -- quadratic pair family on (xi, zeta) over R^n,
  * B_k(gamma)           -- single-block family on R^n, last-variable derivatives,
  * A_k(gamma)           -- the two-variable form of B_k on (x1, x2).

Each family has an independent recurrence route used to cross-check the
Rodrigues route exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .engine import dual_pair_space, rodrigues_c
from .errors import IdentityViolation
from .jordan import JordanAlgebraSpec, det_derivative, single_weight_expr
from .poly import MPoly, VarSpace
from .report import CheckResult
from .scalars import (
    GR_MINUS_I,
    GaussianRational,
    ParamRatio,
    ParamScalar,
    param,
    pochhammer,
    ps,
)

T_SPACE = VarSpace(("x", 1))


@dataclass(frozen=True)
class OrthoPoly:
    """A classical orthogonal polynomial with symbolic parameters."""

    family: str
    degree: int
    value: MPoly


def jacobi(k: int) -> OrthoPoly:
    """Degree-k Jacobi polynomial via its Rodrigues formula.

    (1-t)^a (1+t)^b P_k(t) = (-1)^k / (2^k k!) d^k [ (1-t)^(a+k) (1+t)^(b+k) ],
    with symbolic (alpha, beta) and t = x1.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    from .jordan import DetPowerExpr

    one = MPoly.const(T_SPACE, 1)
    t = MPoly.var(T_SPACE, "x1")
    expr = DetPowerExpr(
        T_SPACE, ((one - t, "alpha"), (one + t, "beta")), (k, k), one
    )
    for _ in range(k):
        expr = det_derivative(expr, "x1")
    p = expr.lift_to((0, 0))
    scale = GaussianRational(Fraction((-1) ** k, 2 ** k * factorial(k)))
    return OrthoPoly("jacobi", k, p.scale(scale))


def tilde_jacobi(k: int) -> MPoly:
    """Two-variable homogenization of P_k: (-1)^k (xi+zeta)^k P_k((zeta-xi)/(xi+zeta))."""
    pk = jacobi(k).value
    space = VarSpace(("xi", 1), ("zeta", 1))
    xi = MPoly.var(space, "xi1")
    zeta = MPoly.var(space, "zeta1")
    diff = zeta - xi
    total = xi + zeta
    out = MPoly.zero(space)
    coeffs = {e[0]: c for e, c in pk.terms.items()}
    for j in range(k + 1):
        c = coeffs.get(j)
        if c is None:
            continue
        out = out + (diff ** j * total ** (k - j)).scale(c)
    return out.scale((-1) ** k)


def q_poly(l: int) -> MPoly:
    """The rank-one pair family: d^l-quotient of xi^(a+l) zeta^(b+l).

    Computed by the rank-one det-power engine; parameters renamed to
    (alpha, beta).
    """
    c = rodrigues_c(JordanAlgebraSpec.rank1(), l).value
    return c.substitute_params({"s": param("alpha"), "t": param("beta")})


def q_poly_recurrence(l: int) -> MPoly:
    """Independent route: q_l = xi zeta (d_xi - d_zeta) q' + ((a+1) zeta - (b+1) xi) q'."""
    space = VarSpace(("xi", 1), ("zeta", 1))
    if l == 0:
        return MPoly.const(space, 1)
    prev = q_poly_recurrence(l - 1).substitute_params(
        {"alpha": param("alpha") + ps(1), "beta": param("beta") + ps(1)}
    )
    xi = MPoly.var(space, "xi1")
    zeta = MPoly.var(space, "zeta1")
    dq = prev.partial("xi1") - prev.partial("zeta1")
    lin = zeta.scale(param("alpha") + ps(1)) - xi.scale(param("beta") + ps(1))
    return xi * zeta * dq + lin * prev


def gegenbauer_ratio(k: int) -> ParamRatio:
    """The Rodrigues normalization constant in Pochhammer form.

    c_k(lambda) = (-1)^k (2 lambda)_k / (2^k k! (lambda + 1/2)_k); Gamma
    ratios never appear, only rising factorials.
    """
    lam = param("lambda")
    num = pochhammer(lam.scale(2), k).scale((-1) ** k)
    den = pochhammer(lam + ps(Fraction(1, 2)), k).scale(2 ** k * factorial(k))
    return ParamRatio(num, den)


def gegenbauer(k: int) -> OrthoPoly:
    """Degree-k Gegenbauer polynomial via its Rodrigues formula.

    C_k(t) = c_k(lambda) (1-t^2)^(1/2-lambda) d^k (1-t^2)^(k+lambda-1/2); the
    (lambda+1/2)_k denominator cancels exactly (asserted by exact division).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    t = MPoly.var(T_SPACE, "x1")
    w = MPoly.const(T_SPACE, 1) - t * t
    expr = single_weight_expr(w, "lambda", Fraction(2 * k - 1, 2))
    for _ in range(k):
        expr = det_derivative(expr, "x1")
    q = expr.lift_to((Fraction(-1, 2),))
    ratio = gegenbauer_ratio(k)
    den_poch = pochhammer(param("lambda") + ps(Fraction(1, 2)), k)
    num_poch = pochhammer(param("lambda").scale(2), k)
    scale = GaussianRational(Fraction((-1) ** k, 2 ** k * factorial(k)))
    value = q.map_coeffs(lambda c: (num_poch * c).exact_div(den_poch).scale(scale))
    return OrthoPoly("gegenbauer", k, value)


# ---------------------------------------------------------------------------
# Families attached to the quadratic algebra
# ---------------------------------------------------------------------------


def _quadratic_space(n: int) -> VarSpace:
    return VarSpace(("xi", n),)


def juhl_B(k: int, n: int, route: str = "definition") -> MPoly:
    """B_k(gamma) with d^k/d(xi_n)^k |xi|^(2(gamma+k)) = B_k |xi|^(2 gamma)."""
    space = _quadratic_space(n)
    if route == "definition":
        q = JordanAlgebraSpec.quadratic(n).det_poly(space, "xi")
        expr = single_weight_expr(q, "gamma", k)
        last = f"xi{n}"
        for _ in range(k):
            expr = det_derivative(expr, last)
        return expr.lift_to((0,))
    if route == "recurrence":
        if k == 0:
            return MPoly.const(space, 1)
        prev = juhl_B(k - 1, n, "recurrence").substitute_param(
            "gamma", param("gamma") + ps(1)
        )
        q = JordanAlgebraSpec.quadratic(n).det_poly(space, "xi")
        xin = MPoly.var(space, f"xi{n}")
        return xin.scale((param("gamma") + ps(1)).scale(2)) * prev + q * prev.partial(f"xi{n}")
    raise ValueError(f"unknown route {route!r}")


def A_poly(k: int) -> MPoly:
    """The two-variable form: d^k/dt^k (s^2+t^2)^(gamma+k) = A_k (s^2+t^2)^gamma.

    Variables are x1 = s, x2 = t; A_k is even in x1.
    """
    space = VarSpace(("x", 2))
    x1 = MPoly.var(space, "x1")
    x2 = MPoly.var(space, "x2")
    expr = single_weight_expr(x1 * x1 + x2 * x2, "gamma", k)
    for _ in range(k):
        expr = det_derivative(expr, "x2")
    return expr.lift_to((0,))


def conformal_p(k: int, n: int, route: str = "definition") -> MPoly:
    """p_k(alpha, beta) for the quadratic pair family on (xi, zeta)."""
    if route == "definition":
        c = rodrigues_c(JordanAlgebraSpec.quadratic(n), k).value
        return c.substitute_params({"s": param("alpha"), "t": param("beta")})
    if route == "recurrence":
        space = dual_pair_space(JordanAlgebraSpec.quadratic(n))
        if k == 0:
            return MPoly.const(space, 1)
        prev = conformal_p(k - 1, n, "recurrence").substitute_params(
            {"alpha": param("alpha") + ps(1), "beta": param("beta") + ps(1)}
        )
        xis = [MPoly.var(space, f"xi{j+1}") for j in range(n)]
        zetas = [MPoly.var(space, f"zeta{j+1}") for j in range(n)]
        q_xi = sum((v * v for v in xis), MPoly.zero(space))
        q_zeta = sum((v * v for v in zetas), MPoly.zero(space))
        dot = sum((xis[j] * zetas[j] for j in range(n)), MPoly.zero(space))
        a2 = param("alpha").scale(2) + ps(2)  # 2 alpha + 2
        b2 = param("beta").scale(2) + ps(2)
        an = param("alpha").scale(2) + ps(n)
        bn = param("beta").scale(2) + ps(n)
        lap = MPoly.zero(space)
        grad_x = MPoly.zero(space)
        grad_z = MPoly.zero(space)
        for j in range(n):
            dxi = prev.partial(f"xi{j+1}")
            dzeta = prev.partial(f"zeta{j+1}")
            d1 = dxi - dzeta
            lap = lap + d1.partial(f"xi{j+1}") - d1.partial(f"zeta{j+1}")
            grad_x = grad_x + xis[j] * d1
            grad_z = grad_z + zetas[j] * (-d1)
        bracket = q_zeta.scale(a2 * an) - dot.scale((a2 * b2).scale(2)) + q_xi.scale(b2 * bn)
        return (
            q_xi * q_zeta * lap
            + (q_zeta * grad_x).scale(a2.scale(2))
            + (q_xi * grad_z).scale(b2.scale(2))
            + bracket * prev
        )
    raise ValueError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# Identification checks
# ---------------------------------------------------------------------------


def jacobi_identification(k: int) -> CheckResult:
    """q_k(alpha, beta) equals (-1)^k k! times the homogenized Jacobi polynomial."""
    lhs = q_poly(k)
    rhs = tilde_jacobi(k).scale((-1) ** k * factorial(k))
    ok = lhs == rhs
    return CheckResult(
        f"rank-one family = (-1)^k k! homogenized Jacobi (k={k})",
        ok,
        detail="" if ok else f"lhs {lhs!r} rhs {rhs!r}",
    )


def gegen_A_relation(k: int) -> CheckResult:
    """Cross-multiplied identity between A_k and the Gegenbauer polynomial.

    A_k(s, t) * c_k-num = c_k-den * (-i)^k s^k C_k(t/(is)) with the ratio
    taken at lambda = gamma + 1/2; the right side expands to a polynomial
    because only integer powers of (is) survive.
    """
    space = VarSpace(("x", 2))
    a_val = A_poly(k)
    ck = gegenbauer(k).value.substitute_param(
        "lambda", param("gamma") + ps(Fraction(1, 2))
    )
    coeffs = {e[0]: c for e, c in ck.terms.items()}
    rhs = MPoly.zero(space)
    for m, c in coeffs.items():
        mono = MPoly.monomial(space, (k - m, m), c.scale(GR_MINUS_I ** (k + m)))
        rhs = rhs + mono
    ratio = gegenbauer_ratio(k).substitute("lambda", param("gamma") + ps(Fraction(1, 2)))
    lhs_scaled = a_val.scale(ratio.num)
    rhs_scaled = rhs.scale(ratio.den)
    ok = lhs_scaled == rhs_scaled
    return CheckResult(
        f"Gegenbauer cross-multiplied identity (k={k})",
        ok,
        detail="" if ok else f"lhs {lhs_scaled!r} rhs {rhs_scaled!r}",
    )


def juhl_B_routes_agree(k: int, n: int) -> CheckResult:
    lhs = juhl_B(k, n, "definition")
    rhs = juhl_B(k, n, "recurrence")
    ok = lhs == rhs
    return CheckResult(
        f"single-block family: derivative route = recurrence route (k={k}, n={n})", ok
    )


def juhl_B_equals_A(k: int, n: int) -> CheckResult:
    """B_k on R^n collapses to A_k(|xi'|, xi_n); checked via even powers."""
    b = juhl_B(k, n, "definition")
    a = A_poly(k)
    space = b.space
    q_prefix = MPoly.zero(space)
    for j in range(n - 1):
        v = MPoly.var(space, f"xi{j+1}")
        q_prefix = q_prefix + v * v
    xin = MPoly.var(space, f"xi{n}")
    expanded = MPoly.zero(space)
    for e, c in a.terms.items():
        j, m = e
        if j % 2:
            return CheckResult(
                f"two-variable form even in first variable (k={k})", False
            )
        expanded = expanded + (q_prefix ** (j // 2) * xin ** m).scale(c)
    ok = expanded == b
    return CheckResult(
        f"two-variable form matches the R^n family (k={k}, n={n})", ok
    )


def conformal_routes_agree(k: int, n: int) -> CheckResult:
    lhs = conformal_p(k, n, "definition")
    rhs = conformal_p(k, n, "recurrence")
    ok = lhs == rhs
    return CheckResult(
        f"quadratic pair family: det-power route = recurrence route (k={k}, n={n})", ok
    )


def jacobi_gegenbauer_guard(k: int) -> CheckResult:
    """Proportionality guard: (lambda+1/2)_k C_k = (2 lambda)_k P_k at alpha=beta=lambda-1/2."""
    lam = param("lambda")
    pk = jacobi(k).value.substitute_params(
        {
            "alpha": lam + ps(Fraction(-1, 2)),
            "beta": lam + ps(Fraction(-1, 2)),
        }
    )
    ck = gegenbauer(k).value
    lhs = ck.scale(pochhammer(lam + ps(Fraction(1, 2)), k))
    rhs = pk.scale(pochhammer(lam.scale(2), k))
    ok = lhs == rhs
    return CheckResult(
        f"Jacobi/Gegenbauer proportionality guard (k={k})", ok
    )
