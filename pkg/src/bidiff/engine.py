"""Symbols of the covariant bi-differential operators, by three routes.

Route r(odrigues): apply det(d_xi - d_zeta) k times to the det-power
expression (det xi)^(s+k) (det zeta)^(t+k) and extract the polynomial part.

Route recurrence: step from c^(k-1) with the parameters shifted symbolically
by one, apply the operator once, extract.

Route source iteration: start from the printed source-operator symbol and
iterate the sharp product, evaluating the base variables at zero.  This
route carries explicit unit factors (powers of i) relative to the first two.

Heavy symbol computations are memoized per (algebra, k, route); caching is
transparent and can be disabled with the BIDIFF_NO_CACHE environment
variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import CovarianceViolation
from .jordan import (
    DetPowerExpr,
    JordanAlgebraSpec,
    apply_constcoeff,
    cayley_difference,
    det_derivative,
    det_pair_expr,
)
from .poly import MPoly, VarSpace, mi_sub
from .report import CheckResult
from .scalars import (
    GR_I,
    GR_MINUS_I,
    GaussianRational,
    ParamScalar,
    gr,
    param,
    ps,
)
from .weyl import (
    WeylOperator,
    eval_base_zero,
    iter_sub_indices,
    multi_binom,
    quantize,
    sharp,
    sigma,
)

ROUTES = ("rodrigues", "recurrence", "source")
SOURCE_FAMILIES = ("rc", "conformal", "juhl")


@dataclass(frozen=True)
class SymbolFamily:
    """One computed symbol: a polynomial on the dual pair (xi, zeta)."""

    algebra: JordanAlgebraSpec
    k: int
    route: str
    value: MPoly
    params: tuple[str, ...]


@dataclass(frozen=True)
class SourceOperator:
    """A source operator together with its full symbol."""

    family: str
    n: int
    space: VarSpace
    symbol: MPoly
    operator: WeylOperator
    params: tuple[str, ...]


_CACHE: dict = {}


def cache_enabled() -> bool:
    return not os.environ.get("BIDIFF_NO_CACHE")


def _cached(key, builder: Callable):
    if not cache_enabled():
        return builder()
    got = _CACHE.get(key)
    if got is None:
        got = builder()
        _CACHE[key] = got
    return got


def clear_cache():
    _CACHE.clear()


def dual_pair_space(J: JordanAlgebraSpec) -> VarSpace:
    return VarSpace(("xi", J.n), ("zeta", J.n))


def _alg_key(J: JordanAlgebraSpec):
    return (J.kind, J.n, J.signature)


# ---------------------------------------------------------------------------
# The two det-power routes
# ---------------------------------------------------------------------------


def rodrigues_c(J: JordanAlgebraSpec, k: int) -> SymbolFamily:
    """c^(k) by k-fold application of det(d_xi - d_zeta) to det powers."""
    if k < 0:
        raise ValueError("k must be >= 0")

    def build():
        space = dual_pair_space(J)
        cay = cayley_difference(J, space, "xi", "zeta")
        expr = det_pair_expr(J, space, "xi", "zeta", k, k)
        for j in range(1, k + 1):
            expr = apply_constcoeff(cay, expr)
            # The intermediate value is a polynomial times integer det powers;
            # lifting back after every pass keeps expressions small.
            p = expr.lift_to((k - j, k - j))
            expr = det_pair_expr(J, space, "xi", "zeta", k - j, k - j, poly=p)
        return SymbolFamily(J, k, "rodrigues", expr.poly, ("s", "t"))

    return _cached(("rodrigues", _alg_key(J), k), build)


def recurrence_c(J: JordanAlgebraSpec, k: int) -> SymbolFamily:
    """c^(k) from c^(k-1) with the symbolic parameter shift s,t -> s+1,t+1."""
    if k < 0:
        raise ValueError("k must be >= 0")

    def build():
        space = dual_pair_space(J)
        if k == 0:
            return SymbolFamily(J, 0, "recurrence", MPoly.const(space, 1), ("s", "t"))
        cay = cayley_difference(J, space, "xi", "zeta")
        prev = recurrence_c(J, k - 1).value
        shifted = prev.substitute_params(
            {"s": param("s") + ps(1), "t": param("t") + ps(1)}
        )
        expr = det_pair_expr(J, space, "xi", "zeta", 1, 1, poly=shifted)
        expr = apply_constcoeff(cay, expr)
        value = expr.lift_to((0, 0))
        return SymbolFamily(J, k, "recurrence", value, ("s", "t"))

    return _cached(("recurrence", _alg_key(J), k), build)


def symbol_b(J: JordanAlgebraSpec, k: int) -> SymbolFamily:
    """The bi-differential symbol: c^(k) at s = lambda - n/r, t = mu - n/r."""

    def build():
        c = rodrigues_c(J, k).value
        shift = ps(gr(Fraction(J.n, J.r)))
        value = c.substitute_params(
            {"s": param("lambda") - shift, "t": param("mu") - shift}
        )
        return SymbolFamily(J, k, "rodrigues", value, ("lambda", "mu"))

    return _cached(("symbol_b", _alg_key(J), k), build)


# ---------------------------------------------------------------------------
# The det-power conjugated operator D_{s,t}
# ---------------------------------------------------------------------------


def conjugated_operator(J: JordanAlgebraSpec) -> WeylOperator:
    """The operator D with det^(s-1,t-1) . D = det((1/i) d) . det^(s,t).

    Acts in the dual-pair variables (xi, zeta); its coefficients are
    polynomial in (s, t).  Computed by expanding the conjugation with the
    product rule and extracting each derivative's coefficient exactly.
    """

    def build():
        space = dual_pair_space(J)
        cay = cayley_difference(J, space, "xi", "zeta")
        base = det_pair_expr(J, space, "xi", "zeta", 0, 0)
        deriv: dict[tuple[int, ...], DetPowerExpr] = {(0,) * space.nvars: base}

        def expr_for(gamma: tuple[int, ...]) -> DetPowerExpr:
            got = deriv.get(gamma)
            if got is not None:
                return got
            i = next(j for j, v in enumerate(gamma) if v)
            prev = list(gamma)
            prev[i] -= 1
            out = det_derivative(expr_for(tuple(prev)), space.names[i])
            deriv[gamma] = out
            return out

        collected: dict[tuple[int, ...], DetPowerExpr] = {}
        for alpha, cpoly in cay.terms.items():
            c = cpoly.constant_value()
            for beta in iter_sub_indices(alpha, alpha):
                gamma = mi_sub(alpha, beta)
                piece = expr_for(gamma).scale(c.scale(multi_binom(alpha, beta)))
                if beta in collected:
                    collected[beta] = collected[beta] + piece
                else:
                    collected[beta] = piece
        unit = ps(GR_MINUS_I ** J.r)  # the operator carries (1/i)^rank
        terms: dict[tuple[int, ...], MPoly] = {}
        for beta, expr in collected.items():
            p = expr.lift_to((-1, -1)).scale(unit)
            if not p.is_zero():
                terms[beta] = p
        return WeylOperator(space, terms)

    return _cached(("conjugated", _alg_key(J)), build)


# ---------------------------------------------------------------------------
# Source operators and their iteration
# ---------------------------------------------------------------------------


def source_operator(family: str, n: int | None = None) -> SourceOperator:
    """The printed source operator for a family: rc, conformal(n), juhl(n)."""
    if family == "rc":
        space = VarSpace(("x", 1), ("y", 1), ("xi", 1), ("zeta", 1))
        lam, mu = param("lambda"), param("mu")
        x, y = MPoly.var(space, "x1"), MPoly.var(space, "y1")
        xi, zeta = MPoly.var(space, "xi1"), MPoly.var(space, "zeta1")
        sym = -((x - y) * xi * zeta) + (xi.scale(-mu) + zeta.scale(lam)).scale(GR_I)
        return SourceOperator("rc", 1, space, sym, quantize(sym), ("lambda", "mu"))
    if family == "conformal":
        if not n or n < 1:
            raise ValueError("conformal family needs a dimension n >= 1")
        space = VarSpace(("x", n), ("y", n), ("xi", n), ("zeta", n))
        lam, mu = param("lambda"), param("mu")
        a = ps(2) * (ps(2) * lam - ps(n) + ps(2))  # 2(2 lambda - n + 2)
        b = ps(2) * (ps(2) * mu - ps(n) + ps(2))
        xs = [MPoly.var(space, f"x{j+1}") for j in range(n)]
        ys = [MPoly.var(space, f"y{j+1}") for j in range(n)]
        xis = [MPoly.var(space, f"xi{j+1}") for j in range(n)]
        zetas = [MPoly.var(space, f"zeta{j+1}") for j in range(n)]
        q_xy = sum(((xs[j] - ys[j]) * (xs[j] - ys[j]) for j in range(n)), MPoly.zero(space))
        q_xi = sum((xis[j] * xis[j] for j in range(n)), MPoly.zero(space))
        q_zeta = sum((zetas[j] * zetas[j] for j in range(n)), MPoly.zero(space))
        dot = sum((xis[j] * zetas[j] for j in range(n)), MPoly.zero(space))
        lin_x = sum(((xs[j] - ys[j]) * xis[j] for j in range(n)), MPoly.zero(space))
        lin_y = sum(((ys[j] - xs[j]) * zetas[j] for j in range(n)), MPoly.zero(space))
        cross = (a * b).scale(Fraction(1, 2))  # 2(2 lambda - n + 2)(2 mu - n + 2)
        sym = (
            q_xy * q_xi * q_zeta
            - (lin_x * q_zeta.scale(a) + lin_y * q_xi.scale(b)).scale(GR_I)
            - (q_xi.scale(mu * b) - dot.scale(cross) + q_zeta.scale(lam * a))
        )
        return SourceOperator("conformal", n, space, sym, quantize(sym), ("lambda", "mu"))
    if family == "juhl":
        if not n or n < 1:
            raise ValueError("juhl family needs a dimension n >= 1")
        space = VarSpace(("x", n), ("xi", n))
        lam = param("lambda")
        c = ps(2) * lam - ps(n) + ps(2)
        xn = MPoly.var(space, f"x{n}")
        xin = MPoly.var(space, f"xi{n}")
        q_xi = sum(
            (MPoly.var(space, f"xi{j+1}") * MPoly.var(space, f"xi{j+1}") for j in range(n)),
            MPoly.zero(space),
        )
        sym = -(xn * q_xi) + xin.scale(c).scale(GR_I)
        return SourceOperator("juhl", n, space, sym, quantize(sym), ("lambda",))
    raise ValueError(f"unsupported source family {family!r}")


def iterate_source(family: str, n: int | None, k: int) -> MPoly:
    """The order-k symbol from iterated sharp composition, at base zero."""
    if k < 0:
        raise ValueError("k must be >= 0")

    def build():
        src = source_operator(family, n)
        full = src.space
        dual = full.subspace(name for name, _ in full.blocks if name in ("xi", "zeta"))
        if k == 0:
            return MPoly.const(dual, 1)
        prev = iterate_source(family, n, k - 1)
        shifts = {p: param(p) + ps(1) for p in src.params}
        shifted = prev.substitute_params(shifts).embed(full)
        return eval_base_zero(sharp(shifted, src.symbol))

    return _cached(("iterate", family, n, k), build)


# ---------------------------------------------------------------------------
# Applying the bi-differential operator
# ---------------------------------------------------------------------------


def bidiff_operator(J: JordanAlgebraSpec, k: int, lam=None, mu=None) -> WeylOperator:
    """c^(k) at (lambda - n/r, mu - n/r) with xi, zeta read as d/dx, d/dy."""
    c = symbol_b(J, k).value
    if lam is not None:
        c = c.substitute_param("lambda", gr(lam))
    if mu is not None:
        c = c.substitute_param("mu", gr(mu))
    space = VarSpace(("x", J.n), ("y", J.n))
    # The (xi, zeta) exponent tuples align with (x, y) variable order.
    return WeylOperator(
        space, {e: MPoly.const(space, coeff) for e, coeff in c.terms.items()}
    )


def bidiff_apply(
    J: JordanAlgebraSpec, k: int, lam, mu, f: MPoly, g: MPoly
) -> MPoly:
    """Apply the order-k operator to f(x) g(y) and restrict to the diagonal."""
    op = bidiff_operator(J, k, lam, mu)
    space = op.space
    h = op.apply(f.embed(space) * g.embed(space))
    diag = h.substitute_vars(
        {f"y{j+1}": MPoly.var(space, f"x{j+1}") for j in range(J.n)}
    )
    return diag.project(VarSpace(("x", J.n)))


# ---------------------------------------------------------------------------
# Covariance checks
# ---------------------------------------------------------------------------

ROTATION_2D = (
    (Fraction(3, 5), Fraction(-4, 5)),
    (Fraction(4, 5), Fraction(3, 5)),
)


def _rotation_matrix(n: int):
    """The rational 2x2 rotation, embedded as identity on further coordinates."""
    rows = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        rows.append(row)
    for i in range(2):
        for j in range(2):
            rows[i][j] = ROTATION_2D[i][j]
    return rows


def check_homogeneity(J: JordanAlgebraSpec, k: int) -> CheckResult:
    """Dilation covariance: c^(k) is jointly homogeneous of degree r*k."""
    c = rodrigues_c(J, k).value
    ok = c.is_homogeneous(J.r * k)
    return CheckResult(
        f"homogeneity degree {J.r * k} ({J.token()}, k={k})",
        ok,
        detail="" if ok else "degree mismatch",
    )


def check_constant_coefficients(J: JordanAlgebraSpec, k: int) -> CheckResult:
    """Translation covariance: the symbol has no base-variable dependence."""
    c = rodrigues_c(J, k).value
    ok = all(name in ("xi", "zeta") for name, _ in c.space.blocks)
    return CheckResult(
        f"constant coefficients ({J.token()}, k={k})", ok
    )


def check_rotation_invariance(J: JordanAlgebraSpec, k: int, matrix=None) -> CheckResult:
    """Simultaneous rational rotation of both dual blocks fixes the symbol."""
    if J.kind != "quadratic" or not J.euclidean:
        raise ValueError("rotation check applies to the euclidean quadratic algebra")
    rows = matrix if matrix is not None else _rotation_matrix(J.n)
    c = rodrigues_c(J, k).value
    space = c.space
    mapping = {}
    for block in ("xi", "zeta"):
        vs = [MPoly.var(space, f"{block}{j+1}") for j in range(J.n)]
        for i in range(J.n):
            img = MPoly.zero(space)
            for j in range(J.n):
                if rows[i][j]:
                    img = img + vs[j].scale(rows[i][j])
            mapping[f"{block}{i+1}"] = img
    rotated = c.substitute_vars(mapping)
    ok = rotated == c
    return CheckResult(
        f"rotation invariance ({J.token()}, k={k})",
        ok,
        detail="" if ok else "rotated symbol differs",
    )


def _sl2_actions(k: int):
    """Weight-lambda tensor action and the target action through restriction.

    Realization (frozen after fixing the k=1 case): e = d/dx,
    h = 2x d/dx + weight, f = x^2 d/dx + weight*x; the target weight is
    lambda + mu + 2k.  Conjugating the target action through the diagonal
    restriction turns d/dx into d/dx + d/dy.
    """
    space = VarSpace(("x", 1), ("y", 1))
    x = MPoly.var(space, "x1")
    y = MPoly.var(space, "y1")
    one = MPoly.const(space, 1)
    lam, mu = param("lambda"), param("mu")
    nu = lam + mu + ps(2 * k)
    dx, dy = (1, 0), (0, 1)
    zero = (0, 0)

    def op(items):
        return WeylOperator.from_terms(space, items)

    pair = {
        "e": op([(dx, one), (dy, one)]),
        "h": op([(dx, x.scale(2)), (dy, y.scale(2)), (zero, one.scale(lam + mu))]),
        "f": op([(dx, x * x), (dy, y * y), (zero, x.scale(lam) + y.scale(mu))]),
    }
    target = {
        "e": op([(dx, one), (dy, one)]),
        "h": op([(dx, x.scale(2)), (dy, x.scale(2)), (zero, one.scale(nu))]),
        "f": op([(dx, x * x), (dy, x * x), (zero, x.scale(nu))]),
    }
    return space, pair, target


def check_sl2_covariance(k: int) -> CheckResult:
    """Infinitesimal covariance for the rank-one algebra, all three generators."""
    J = JordanAlgebraSpec.rank1()
    space, pair, target = _sl2_actions(k)
    bop = bidiff_operator(J, k)
    for name in ("e", "h", "f"):
        w = bop.compose(pair[name]) - target[name].compose(bop)
        for alpha, p in w.terms.items():
            diag = p.substitute_vars({"y1": MPoly.var(space, "x1")})
            if not diag.is_zero():
                return CheckResult(
                    f"sl2 covariance (rank1, k={k})",
                    False,
                    detail=f"generator {name}, derivative {alpha}: residue {diag!r}",
                )
    return CheckResult(f"sl2 covariance (rank1, k={k})", True)


def covariance_checks(J: JordanAlgebraSpec, k: int, raise_on_failure: bool = False):
    """Run the desk-scale covariance fragments for one algebra and order."""
    results = [check_constant_coefficients(J, k), check_homogeneity(J, k)]
    if J.kind == "quadratic" and J.euclidean:
        results.append(check_rotation_invariance(J, k))
    if J.kind == "rank1":
        results.append(check_sl2_covariance(k))
    if raise_on_failure:
        for r in results:
            if not r.passed:
                raise CovarianceViolation(r.name, certificate=r.detail)
    return results
