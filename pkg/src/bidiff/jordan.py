"""Jordan algebra descriptors and det-power expressions closed under d/dx.

Three algebras are supported: the rank-one line (det x = x1), the quadratic
family on R^n (det x = sum sigma_j x_j^2, configurable signature, rank 2) and
2x2 real matrices (det x = x1 x4 - x2 x3 in row-major coordinates, rank 2).

A :class:`DetPowerExpr` denotes ``P * prod_j w_j^(p_j + shift_j)`` for weight
polynomials w_j and symbolic exponent parameters p_j.  Differentiation uses
the symbolic power rule and the result is re-canonicalized so that all terms
share the minimal shifts.  Shifts may be rational (needed for half-integer
weight exponents); they always differ by integers inside one expression.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DivisibilityViolation
from .poly import MPoly, VarSpace
from .scalars import GaussianRational, ParamScalar, gr, ps
from .weyl import WeylOperator


@dataclass(frozen=True)
class JordanAlgebraSpec:
    """A supported algebra: just its dimension, rank and determinant."""

    kind: str
    n: int
    r: int
    signature: tuple[int, ...] | None = None

    @staticmethod
    def rank1() -> "JordanAlgebraSpec":
        return JordanAlgebraSpec("rank1", 1, 1)

    @staticmethod
    def quadratic(n: int, signature: Sequence[int] | None = None) -> "JordanAlgebraSpec":
        if n < 1:
            raise ValueError("quadratic algebra needs n >= 1")
        if signature is None:
            signature = (1,) * n
        signature = tuple(signature)
        if len(signature) != n or any(s not in (1, -1) for s in signature):
            raise ValueError("signature must be n entries of +-1")
        return JordanAlgebraSpec("quadratic", n, 2, signature)

    @staticmethod
    def matrix2() -> "JordanAlgebraSpec":
        return JordanAlgebraSpec("matrix2", 4, 2)

    @staticmethod
    def parse(token: str) -> "JordanAlgebraSpec":
        """Parse CLI selection strings: rank1, quadratic:n[:signature], matrix2."""
        parts = token.split(":")
        if parts[0] == "rank1" and len(parts) == 1:
            return JordanAlgebraSpec.rank1()
        if parts[0] == "matrix2" and len(parts) == 1:
            return JordanAlgebraSpec.matrix2()
        if parts[0] == "quadratic" and len(parts) in (2, 3):
            try:
                n = int(parts[1])
            except ValueError:
                raise ValueError(f"bad quadratic dimension in {token!r}") from None
            sig = None
            if len(parts) == 3:
                if not all(c in "+-" for c in parts[2]):
                    raise ValueError(f"bad signature in {token!r}")
                sig = tuple(1 if c == "+" else -1 for c in parts[2])
            return JordanAlgebraSpec.quadratic(n, sig)
        raise ValueError(f"unknown algebra {token!r}")

    def token(self) -> str:
        if self.kind == "quadratic":
            sig = ""
            if self.signature and any(s < 0 for s in self.signature):
                sig = ":" + "".join("+" if s > 0 else "-" for s in self.signature)
            return f"quadratic:{self.n}{sig}"
        return self.kind

    @property
    def euclidean(self) -> bool:
        return self.kind != "quadratic" or all(s > 0 for s in (self.signature or ()))

    def det_poly(self, space: VarSpace, block: str) -> MPoly:
        """The determinant polynomial written in the given block's variables."""
        v = [MPoly.var(space, f"{block}{j+1}") for j in range(self.n)]
        if self.kind == "rank1":
            return v[0]
        if self.kind == "quadratic":
            out = MPoly.zero(space)
            for j, sgn in enumerate(self.signature):
                out = out + (v[j] * v[j]).scale(sgn)
            return out
        # matrix2, row-major entries (x1 x2 / x3 x4)
        return v[0] * v[3] - v[1] * v[2]


def cayley_difference(J: JordanAlgebraSpec, space: VarSpace, bx: str = "x", by: str = "y") -> WeylOperator:
    """The constant-coefficient operator det(d/d<bx> - d/d<by>) on ``space``."""
    sym = J.det_poly(space, bx).substitute_vars(
        {
            f"{bx}{j+1}": MPoly.var(space, f"{bx}{j+1}") - MPoly.var(space, f"{by}{j+1}")
            for j in range(J.n)
        }
    )
    return WeylOperator(
        space, {e: MPoly.const(space, c) for e, c in sym.terms.items()}
    )


class DetPowerExpr:
    """P * prod_j w_j^(param_j + shift_j), canonical (single P, common shifts)."""

    __slots__ = ("space", "weights", "shifts", "poly")

    def __init__(
        self,
        space: VarSpace,
        weights: Sequence[tuple[MPoly, str]],
        shifts: Sequence[int | Fraction],
        poly: MPoly,
    ):
        self.space = space
        self.weights = tuple(weights)
        self.shifts = tuple(Fraction(s) for s in shifts)
        self.poly = poly
        if len(self.weights) != len(self.shifts):
            raise ValueError("one shift per weight required")

    def _compatible(self, other: "DetPowerExpr") -> bool:
        return (
            self.space == other.space
            and len(self.weights) == len(other.weights)
            and all(
                w1 == w2 and p1 == p2
                for (w1, p1), (w2, p2) in zip(self.weights, other.weights)
            )
        )

    def __eq__(self, other):
        if not isinstance(other, DetPowerExpr):
            return NotImplemented
        if not self._compatible(other):
            return False
        lo = tuple(min(a, b) for a, b in zip(self.shifts, other.shifts))
        try:
            return self._poly_at(lo) == other._poly_at(lo)
        except ValueError:
            return False

    def _poly_at(self, target: tuple[Fraction, ...]) -> MPoly:
        """P re-expressed at shifts <= current (multiplying det powers in)."""
        p = self.poly
        for (w, _), cur, tgt in zip(self.weights, self.shifts, target):
            delta = cur - tgt
            if delta.denominator != 1 or delta < 0:
                raise ValueError("incompatible shifts")
            if delta:
                p = p * w ** int(delta)
        return p

    def scale(self, c) -> "DetPowerExpr":
        return DetPowerExpr(self.space, self.weights, self.shifts, self.poly.scale(c))

    def mul_poly(self, q: MPoly) -> "DetPowerExpr":
        return DetPowerExpr(self.space, self.weights, self.shifts, self.poly * q)

    def __add__(self, other: "DetPowerExpr") -> "DetPowerExpr":
        if not self._compatible(other):
            raise ValueError("incompatible det-power expressions")
        lo = tuple(min(a, b) for a, b in zip(self.shifts, other.shifts))
        return DetPowerExpr(
            self.space, self.weights, lo, self._poly_at(lo) + other._poly_at(lo)
        )

    def __neg__(self) -> "DetPowerExpr":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def lift_to(self, targets: Sequence[int | Fraction]) -> MPoly:
        """The polynomial Q with self = Q * prod w_j^(param_j + target_j).

        Divides exactly when the stored shift sits below a target; raises
        DivisibilityViolation if that division fails.
        """
        targets = tuple(Fraction(t) for t in targets)
        p = self.poly
        for (w, _), cur, tgt in zip(self.weights, self.shifts, targets):
            delta = cur - tgt
            if delta.denominator != 1:
                raise ValueError("shift difference must be an integer")
            k = int(delta)
            if k > 0:
                p = p * w ** k
            elif k < 0:
                p = p.exact_div_power(w, -k)
        return p

    def expand_integer(self, values: Mapping[str, int]) -> MPoly:
        """Fully expand after substituting integer parameter values.

        Every resulting exponent must be a nonnegative integer; coefficient
        parameters are substituted as well.
        """
        p = self.poly
        for name, val in values.items():
            p = p.substitute_param(name, val)
        for (w, pname), shift in zip(self.weights, self.shifts):
            e = Fraction(values[pname]) + shift
            if e.denominator != 1 or e < 0:
                raise ValueError(f"exponent {e} for weight {pname!r} is not a nonneg integer")
            p = p * w ** int(e)
        return p

    def __repr__(self):
        ws = ", ".join(f"{p}+{s}" for (_, p), s in zip(self.weights, self.shifts))
        return f"DetPowerExpr[{self.poly!r} ; exps {ws}]"


def det_pair_expr(
    J: JordanAlgebraSpec,
    space: VarSpace,
    block_x: str,
    block_y: str,
    shift_x: int = 0,
    shift_y: int = 0,
    poly: MPoly | None = None,
    params: tuple[str, str] = ("s", "t"),
) -> DetPowerExpr:
    """P * (det u)^(s+shift_x) (det v)^(t+shift_y) on a doubled block pair."""
    wx = J.det_poly(space, block_x)
    wy = J.det_poly(space, block_y)
    if poly is None:
        poly = MPoly.const(space, 1)
    return DetPowerExpr(space, ((wx, params[0]), (wy, params[1])), (shift_x, shift_y), poly)


def single_weight_expr(
    w: MPoly, param: str, shift: int | Fraction, poly: MPoly | None = None
) -> DetPowerExpr:
    if poly is None:
        poly = MPoly.const(w.space, 1)
    return DetPowerExpr(w.space, ((w, param),), (shift,), poly)


# ---------------------------------------------------------------------------
# Differentiation
# ---------------------------------------------------------------------------
#
# Internally a derivative pass works on "groups": a dict from shift tuples to
# polynomials.  Single derivatives map each group to at most 1 + #weights
# groups, and only the final normalization multiplies weight polynomials back
# in, which keeps iterated applications cheap.


def _diff_groups(groups, weights, dweights, shifts0, var_idx):
    out: dict[tuple[Fraction, ...], MPoly] = {}

    def _acc(key, p):
        if p.is_zero():
            return
        prev = out.get(key)
        out[key] = p if prev is None else prev + p

    for rel, p in groups.items():
        dp = p.partial_index(var_idx)
        if dp:
            _acc(rel, dp)
        for j, ((w, pname), dw_list) in enumerate(zip(weights, dweights)):
            dw = dw_list[var_idx]
            if dw is None:
                continue
            exponent = ParamScalar.param(pname) + ps(gr(shifts0[j] + rel[j]))
            term = (p * dw).scale(exponent)
            nrel = list(rel)
            nrel[j] -= 1
            _acc(tuple(nrel), term)
    return out


def _normalize_groups(expr_space, weights, shifts0, groups) -> DetPowerExpr:
    if not groups:
        return DetPowerExpr(expr_space, weights, shifts0, MPoly.zero(expr_space))
    mins = [min(rel[j] for rel in groups) for j in range(len(weights))]
    pow_cache: dict[tuple[int, int], MPoly] = {}

    def wpow(j: int, k: int) -> MPoly:
        got = pow_cache.get((j, k))
        if got is None:
            got = weights[j][0] ** k
            pow_cache[(j, k)] = got
        return got

    total = MPoly.zero(expr_space)
    for rel, p in groups.items():
        for j, m in enumerate(mins):
            d = rel[j] - m
            if d:
                p = p * wpow(j, int(d))
        total = total + p
    shifts = tuple(s + m for s, m in zip(shifts0, mins))
    return DetPowerExpr(expr_space, weights, shifts, total)


def _dweights(space: VarSpace, weights):
    """Per-weight list of partials by variable index (None when zero)."""
    out = []
    for w, _ in weights:
        row = []
        for i in range(space.nvars):
            dw = w.partial_index(i)
            row.append(dw if dw else None)
        out.append(row)
    return out


def det_derivative(e: DetPowerExpr, var: str) -> DetPowerExpr:
    """Exact partial derivative, re-canonicalized to minimal common shifts."""
    i = e.space.var_index(var)
    zero_rel = (Fraction(0),) * len(e.weights)
    groups = _diff_groups(
        {zero_rel: e.poly}, e.weights, _dweights(e.space, e.weights), e.shifts, i
    )
    return _normalize_groups(e.space, e.weights, e.shifts, groups)


def apply_constcoeff(op: WeylOperator, e: DetPowerExpr) -> DetPowerExpr:
    """Apply a constant-coefficient operator by iterated differentiation."""
    if op.space != e.space:
        raise ValueError("operator/expression space mismatch")
    if not op.is_constant_coefficient():
        raise ValueError("operator must have constant coefficients")
    dweights = _dweights(e.space, e.weights)
    zero_rel = (Fraction(0),) * len(e.weights)
    base_groups = {zero_rel: e.poly}
    cache: dict[tuple[int, ...], dict] = {(0,) * e.space.nvars: base_groups}

    def groups_for(alpha: tuple[int, ...]) -> dict:
        got = cache.get(alpha)
        if got is not None:
            return got
        i = next(j for j, v in enumerate(alpha) if v)
        prev = list(alpha)
        prev[i] -= 1
        g = _diff_groups(groups_for(tuple(prev)), e.weights, dweights, e.shifts, i)
        cache[alpha] = g
        return g

    total: dict[tuple[Fraction, ...], MPoly] = {}
    for alpha, coeff_poly in sorted(op.terms.items(), key=lambda t: (sum(t[0]), t[0])):
        c = coeff_poly.constant_value()
        g = groups_for(alpha)
        for rel, p in g.items():
            piece = p.scale(c)
            if piece.is_zero():
                continue
            prev = total.get(rel)
            total[rel] = piece if prev is None else prev + piece
    return _normalize_groups(e.space, e.weights, e.shifts, total)
