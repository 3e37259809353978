"""Normal-ordered differential operators, their symbols, and composition.

A :class:`WeylOperator` over a space V is stored in normal order: a map from
derivative multi-indices alpha to polynomial coefficients p_alpha, denoting
``sum_alpha p_alpha(x) d^alpha`` (differentiation first, then multiplication).

Full symbols live on the doubled space (base blocks plus their duals):
``sigma(sum p_alpha d^alpha) = sum p_alpha(x) (i xi)^alpha``.  The two
composition products are implemented as their finite Taylor sums::

    sharp(a, b) = sum_alpha 1/alpha! (1/i d_dual)^alpha a * (d_base)^alpha b
    flat(c, d)  = sum_alpha 1/alpha! (d_base)^alpha c * (1/i d_dual)^alpha d

with 1/i represented exactly as -i.  The dual-side calculus (operators acting
in the dual variables, symbols carrying (i x)^alpha) is provided by
``dual_quantize`` / ``dual_sigma``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .poly import MPoly, VarSpace, mi_add, mi_factorial, mi_sub
from .scalars import GR_I, GR_MINUS_I, GR_ONE, GaussianRational, ParamScalar, ps


class WeylOperator:
    """A differential operator with polynomial coefficients, in normal order."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping[tuple[int, ...], MPoly] | None = None):
        self.space = space
        if terms is None:
            self.terms = {}
        else:
            self.terms = {a: p for a, p in terms.items() if not p.is_zero()}

    @staticmethod
    def zero(space: VarSpace) -> "WeylOperator":
        return WeylOperator(space, {})

    @staticmethod
    def identity(space: VarSpace) -> "WeylOperator":
        z = (0,) * space.nvars
        return WeylOperator(space, {z: MPoly.const(space, 1)})

    @staticmethod
    def from_terms(space: VarSpace, items) -> "WeylOperator":
        out: dict[tuple[int, ...], MPoly] = {}
        for alpha, p in items:
            if alpha in out:
                out[alpha] = out[alpha] + p
            else:
                out[alpha] = p
        return WeylOperator(space, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, WeylOperator):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def order(self) -> int:
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def __add__(self, other: "WeylOperator") -> "WeylOperator":
        if self.space != other.space:
            raise ValueError("operator space mismatch")
        out = dict(self.terms)
        for a, p in other.terms.items():
            if a in out:
                out[a] = out[a] + p
            else:
                out[a] = p
        return WeylOperator(self.space, out)

    def __neg__(self) -> "WeylOperator":
        return WeylOperator(self.space, {a: -p for a, p in self.terms.items()})

    def __sub__(self, other: "WeylOperator") -> "WeylOperator":
        return self + (-other)

    def scale(self, c) -> "WeylOperator":
        return WeylOperator(self.space, {a: p.scale(c) for a, p in self.terms.items()})

    def map_coeffs(self, fn) -> "WeylOperator":
        return WeylOperator(self.space, {a: fn(p) for a, p in self.terms.items()})

    def is_constant_coefficient(self) -> bool:
        return all(p.constant_value() is not None for p in self.terms.values())

    def apply(self, f: MPoly) -> MPoly:
        """Apply the operator to a polynomial: sum p_alpha d^alpha f."""
        if f.space != self.space:
            raise ValueError("operand space mismatch")
        out = MPoly.zero(self.space)
        for alpha, p in self.terms.items():
            df = f.partial_multi(alpha)
            if df.is_zero():
                continue
            out = out + p * df
        return out

    def compose(self, other: "WeylOperator") -> "WeylOperator":
        """Operator composition self . other, re-normal-ordered via Leibniz."""
        if self.space != other.space:
            raise ValueError("operator space mismatch")
        out: dict[tuple[int, ...], MPoly] = {}
        for alpha, p in self.terms.items():
            for beta, q in other.terms.items():
                bound = q.max_degree_per_var()
                for gamma in iter_sub_indices(alpha, bound):
                    dq = q.partial_multi(gamma)
                    if dq.is_zero():
                        continue
                    coeff = multi_binom(alpha, gamma)
                    key = mi_add(mi_sub(alpha, gamma), beta)
                    piece = p * dq
                    if coeff != 1:
                        piece = piece.scale(coeff)
                    if key in out:
                        out[key] = out[key] + piece
                    else:
                        out[key] = piece
        return WeylOperator(self.space, out)

    def __repr__(self):
        from .parsing import poly_to_text

        bits = []
        for alpha in sorted(self.terms, key=lambda a: (sum(a), a)):
            ds = "*".join(
                f"d_{self.space.names[i]}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(alpha)
                if k
            )
            c = poly_to_text(self.terms[alpha])
            bits.append(f"({c})" + (f"*{ds}" if ds else ""))
        return "WeylOperator[" + (" + ".join(bits) if bits else "0") + "]"


def iter_sub_indices(alpha: tuple[int, ...], bound: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All gamma <= alpha componentwise, clipped by a per-variable bound."""
    limits = [min(a, b) for a, b in zip(alpha, bound)]

    def rec(i: int, acc: list[int]):
        if i == len(limits):
            yield tuple(acc)
            return
        for v in range(limits[i] + 1):
            acc.append(v)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def binom(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out = out * (n - j) // (j + 1)
    return out


def multi_binom(alpha: tuple[int, ...], gamma: tuple[int, ...]) -> int:
    out = 1
    for a, g in zip(alpha, gamma):
        if g:
            out *= binom(a, g)
    return out


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------


def _dual_exps(full: VarSpace, op_space: VarSpace, alpha: tuple[int, ...], dual: bool) -> tuple[int, ...]:
    """Spread a multi-index over op_space onto the (dual of the) full space."""
    out = [0] * full.nvars
    pairs = dict(full.dual_pairs())
    for i, k in enumerate(alpha):
        if not k:
            continue
        j = full.var_index(op_space.names[i])
        out[pairs[j] if dual else j] = k
    return tuple(out)


def sigma(op: WeylOperator) -> MPoly:
    """Full symbol on the doubled space: sum p_alpha(x) (i xi)^alpha."""
    full = op.space.doubled()
    out = MPoly.zero(full)
    for alpha, p in op.terms.items():
        k = sum(alpha)
        mono = MPoly.monomial(full, _dual_exps(full, op.space, alpha, dual=True), GR_I ** k)
        out = out + p.embed(full) * mono
    return out


def quantize(symbol: MPoly) -> WeylOperator:
    """Inverse of sigma: x^beta (i xi)^alpha becomes x^beta d^alpha."""
    full = symbol.space
    base_idx = full.base_indices()
    dual_idx = full.dual_indices()
    base_space = full.subspace(n for n, _ in full.blocks if n in ("x", "y"))
    pairs = {d: b for b, d in full.dual_pairs()}
    terms: dict[tuple[int, ...], MPoly] = {}
    for e, c in symbol.terms.items():
        alpha = [0] * base_space.nvars
        base_e = [0] * full.nvars
        order = 0
        for i in dual_idx:
            k = e[i]
            if k:
                alpha[base_space.var_index(full.names[pairs[i]])] = k
                order += k
        for i in base_idx:
            base_e[i] = e[i]
        coeff = c.scale(GR_MINUS_I ** order) if order else c
        mono = MPoly.monomial(full, tuple(base_e), coeff).project(base_space)
        key = tuple(alpha)
        if key in terms:
            terms[key] = terms[key] + mono
        else:
            terms[key] = mono
    return WeylOperator(base_space, terms)


def dual_sigma(op: WeylOperator, full: VarSpace) -> MPoly:
    """Symbol of an operator acting in the dual variables: carries (i x)^alpha."""
    pairs = {d: b for b, d in full.dual_pairs()}
    out = MPoly.zero(full)
    for alpha, p in op.terms.items():
        k = sum(alpha)
        exps = [0] * full.nvars
        for i, v in enumerate(alpha):
            if v:
                exps[pairs[full.var_index(op.space.names[i])]] = v
        mono = MPoly.monomial(full, tuple(exps), GR_I ** k)
        out = out + p.embed(full) * mono
    return out


def dual_quantize(symbol: MPoly) -> WeylOperator:
    """Inverse of dual_sigma: l(xi) (i x)^alpha becomes l(xi) d_xi^alpha."""
    full = symbol.space
    dual_space = full.subspace(n for n, _ in full.blocks if n in ("xi", "zeta"))
    pairs = dict(full.dual_pairs())  # base index -> dual index
    terms: dict[tuple[int, ...], MPoly] = {}
    for e, c in symbol.terms.items():
        alpha = [0] * dual_space.nvars
        rest = [0] * full.nvars
        order = 0
        for i, k in enumerate(e):
            if not k:
                continue
            if i in pairs:  # a base variable: becomes a derivative in its dual
                alpha[dual_space.var_index(full.names[pairs[i]])] = k
                order += k
            else:
                rest[i] = k
        coeff = c.scale(GR_MINUS_I ** order) if order else c
        mono = MPoly.monomial(full, tuple(rest), coeff).project(dual_space)
        key = tuple(alpha)
        if key in terms:
            terms[key] = terms[key] + mono
        else:
            terms[key] = mono
    return WeylOperator(dual_space, terms)


def _paired_diff_sum(a: MPoly, b: MPoly, a_side: str) -> MPoly:
    """Shared kernel of sharp and flat.

    Sums 1/alpha! (1/i d_dual)^alpha (a-side factor) * (d_base)^alpha (other)
    over paired variables; ``a_side`` says which factor takes the dual
    derivatives ("dual" for sharp's first argument, "base" for flat's first).
    """
    if a.space != b.space:
        raise ValueError("symbol space mismatch")
    full = a.space
    pairs = full.dual_pairs()
    dual_arg, base_arg = (a, b) if a_side == "dual" else (b, a)
    dmax = dual_arg.max_degree_per_var()
    bmax = base_arg.max_degree_per_var()
    limits = [min(dmax[d], bmax[bs]) for bs, d in pairs]
    out = MPoly.zero(full)

    def rec(i: int, dual_cur: MPoly, base_cur: MPoly, order: int, fact: int):
        nonlocal out
        if i == len(pairs):
            piece = dual_cur * base_cur
            c = GR_MINUS_I ** order
            piece = piece.scale(GaussianRational(Fraction(1, fact)) * c)
            out = out + piece
            return
        bs, d = pairs[i]
        dc, bc = dual_cur, base_cur
        k = 0
        while True:
            rec(i + 1, dc, bc, order + k, fact * mi_factorial((k,)))
            if k >= limits[i]:
                return
            dc = dc.partial_index(d)
            bc = bc.partial_index(bs)
            if dc.is_zero() or bc.is_zero():
                return
            k += 1

    rec(0, dual_arg, base_arg, 0, 1)
    return out


def sharp(a: MPoly, b: MPoly) -> MPoly:
    """Composition product: symbol of L.D from symbols a of L and b of D."""
    return _paired_diff_sum(a, b, a_side="dual")


def flat(c: MPoly, d: MPoly) -> MPoly:
    """Dual composition product: base derivatives on c, dual (1/i d) on d."""
    return _paired_diff_sum(c, d, a_side="base")


def eval_base_zero(symbol: MPoly) -> MPoly:
    """Set all base variables to zero, keeping the dual block polynomial."""
    full = symbol.space
    dual_space = full.subspace(n for n, _ in full.blocks if n in ("xi", "zeta"))
    return symbol.eval_vars_zero(full.base_indices()).project(dual_space)


def bidiff_symbol(op: WeylOperator) -> MPoly:
    """Symbol of a bi-differential operator: sigma, then restrict y to x.

    For constant-coefficient operators this is sigma with the base variables
    absent; otherwise the x-dependence is retained.
    """
    full = op.space.doubled()
    s = sigma(op)
    if not op.space.has_block("y"):
        return s
    n = op.space.dim("y")
    mapping = {f"y{j+1}": MPoly.var(full, f"x{j+1}") for j in range(n)}
    return s.substitute_vars(mapping)
