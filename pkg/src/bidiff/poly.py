"""Sparse multivariate polynomials over ParamScalar coefficients.

Variables live in a :class:`VarSpace`: an ordered list of named blocks drawn
from ``x, y, xi, zeta``, each with a dimension.  The variable order is block
order then index, and the canonical term order is graded lexicographic with
earlier variables more significant.  Under that order every supported
determinant polynomial has leading coefficient +-1, so exact division stays in
the coefficient ring.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Union

import heapq

from .errors import DivisibilityViolation
from .scalars import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    ParamScalar,
    PS_ONE,
    gr,
    ps,
)

BLOCK_NAMES = ("x", "y", "xi", "zeta")
DUAL_BLOCK = {"x": "xi", "y": "zeta"}
BASE_BLOCK = {v: k for k, v in DUAL_BLOCK.items()}


class VarSpace:
    """An ordered collection of variable blocks, e.g. ((x, 2), (xi, 2)).

    Spaces are value objects: equal blocks mean equal (and interchangeable)
    spaces.  Variable names are ``<block><index>`` with 1-based indices, so a
    block ("xi", 3) contributes xi1, xi2, xi3.
    """

    __slots__ = ("blocks", "names", "index", "block_start", "nvars", "_hash")

    def __init__(self, *blocks: tuple[str, int]):
        seen = set()
        for name, dim in blocks:
            if name not in BLOCK_NAMES:
                raise ValueError(f"unknown block name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate block {name!r}")
            if dim < 1:
                raise ValueError(f"block {name!r} must have dimension >= 1")
            seen.add(name)
        self.blocks = tuple(blocks)
        names: list[str] = []
        starts: dict[str, int] = {}
        for name, dim in blocks:
            starts[name] = len(names)
            names.extend(f"{name}{i + 1}" for i in range(dim))
        self.names = tuple(names)
        self.index = {v: i for i, v in enumerate(names)}
        self.block_start = starts
        self.nvars = len(names)
        self._hash = hash(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, VarSpace):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "VarSpace" + repr(self.blocks)

    def dim(self, block: str) -> int:
        for name, d in self.blocks:
            if name == block:
                return d
        raise KeyError(block)

    def has_block(self, block: str) -> bool:
        return any(name == block for name, _ in self.blocks)

    def block_indices(self, block: str) -> range:
        start = self.block_start[block]
        return range(start, start + self.dim(block))

    def var_index(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in {self!r}") from None

    def doubled(self) -> "VarSpace":
        """Append the dual block of every base block (x -> xi, y -> zeta)."""
        extra = []
        for name, dim in self.blocks:
            if name in DUAL_BLOCK:
                dual = DUAL_BLOCK[name]
                if not self.has_block(dual):
                    extra.append((dual, dim))
        return VarSpace(*(self.blocks + tuple(extra)))

    def base_indices(self) -> tuple[int, ...]:
        out: list[int] = []
        for name, _ in self.blocks:
            if name in DUAL_BLOCK:
                out.extend(self.block_indices(name))
        return tuple(out)

    def dual_indices(self) -> tuple[int, ...]:
        out: list[int] = []
        for name, _ in self.blocks:
            if name in BASE_BLOCK:
                out.extend(self.block_indices(name))
        return tuple(out)

    def dual_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs (base var index, dual var index): x_j <-> xi_j, y_j <-> zeta_j."""
        pairs = []
        for name, dim in self.blocks:
            if name in DUAL_BLOCK and self.has_block(DUAL_BLOCK[name]):
                b = self.block_start[name]
                d = self.block_start[DUAL_BLOCK[name]]
                pairs.extend((b + j, d + j) for j in range(dim))
        return tuple(pairs)

    def subspace(self, block_names: Iterable[str]) -> "VarSpace":
        wanted = set(block_names)
        keep = tuple(b for b in self.blocks if b[0] in wanted)
        return VarSpace(*keep)


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


def mi_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def mi_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def mi_factorial(a: tuple[int, ...]) -> int:
    out = 1
    for v in a:
        out *= factorial(v)
    return out


CoeffLike = Union[int, Fraction, GaussianRational, ParamScalar]


class MPoly:
    """A sparse polynomial: map from exponent tuples to ParamScalar coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping[tuple[int, ...], ParamScalar] | None = None):
        self.space = space
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(space: VarSpace) -> "MPoly":
        return _mp_make(space, {})

    @staticmethod
    def const(space: VarSpace, value: CoeffLike) -> "MPoly":
        c = ps(value)
        if c.is_zero():
            return _mp_make(space, {})
        return _mp_make(space, {(0,) * space.nvars: c})

    @staticmethod
    def var(space: VarSpace, name: str) -> "MPoly":
        i = space.var_index(name)
        e = [0] * space.nvars
        e[i] = 1
        return _mp_make(space, {tuple(e): PS_ONE})

    @staticmethod
    def monomial(space: VarSpace, exps: tuple[int, ...], coeff: CoeffLike = 1) -> "MPoly":
        c = ps(coeff)
        if c.is_zero():
            return _mp_make(space, {})
        return _mp_make(space, {tuple(exps): c})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        raise TypeError("MPoly is not hashable")

    def constant_value(self) -> ParamScalar | None:
        """The coefficient ring value if the polynomial is constant, else None."""
        if not self.terms:
            return ParamScalar.zero()
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            if not any(e):
                return c
        return None

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in_block(self, block: str) -> int:
        if not self.terms:
            return -1
        idx = list(self.space.block_indices(block))
        return max(sum(e[i] for i in idx) for e in self.terms)

    def degree_in_vars(self, var_indices: Iterable[int]) -> int:
        idx = list(var_indices)
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e in self.terms)

    def max_degree_per_var(self) -> tuple[int, ...]:
        out = [0] * self.space.nvars
        for e in self.terms:
            for i, v in enumerate(e):
                if v > out[i]:
                    out[i] = v
        return tuple(out)

    def is_homogeneous(self, degree: int | None = None, block: str | None = None) -> bool:
        """True if all terms share one (block-)degree, optionally a given one."""
        if not self.terms:
            return True
        if block is None:
            degs = {sum(e) for e in self.terms}
        else:
            idx = list(self.space.block_indices(block))
            degs = {sum(e[i] for i in idx) for e in self.terms}
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def leading(self) -> tuple[tuple[int, ...], ParamScalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], ParamScalar]]:
        """Terms in canonical output order: graded lex, leading term first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _check_space(self, other: "MPoly"):
        if self.space != other.space:
            raise ValueError(f"VarSpace mismatch: {self.space!r} vs {other.space!r}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check_space(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                v = prev + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return _mp_make(self.space, out)

    def __neg__(self) -> "MPoly":
        return _mp_make(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check_space(other)
        if not self.terms or not other.terms:
            return _mp_make(self.space, {})
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e1, c1 in small.items():
            trivial = not any(e1)
            for e2, c2 in big.items():
                e = e2 if trivial else mi_add(e1, e2)
                v = c1 * c2
                if not v:
                    continue
                prev = out.get(e)
                if prev is None:
                    out[e] = v
                else:
                    v = prev + v
                    if v:
                        out[e] = v
                    else:
                        del out[e]
        return _mp_make(self.space, out)

    def scale(self, c: CoeffLike) -> "MPoly":
        c = ps(c)
        if c.is_zero():
            return _mp_make(self.space, {})
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return _mp_make(self.space, out)

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = MPoly.const(self.space, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    # -- calculus ------------------------------------------------------------

    def partial_index(self, i: int) -> "MPoly":
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            ne = list(e)
            ne[i] = k - 1
            ne = tuple(ne)
            v = c.scale(k) if k != 1 else c
            prev = out.get(ne)
            out[ne] = v if prev is None else prev + v
        return _mp_make(self.space, {e: c for e, c in out.items() if c})

    def partial(self, var: str) -> "MPoly":
        return self.partial_index(self.space.var_index(var))

    def partial_multi(self, alpha: tuple[int, ...]) -> "MPoly":
        out = self
        for i, k in enumerate(alpha):
            for _ in range(k):
                out = out.partial_index(i)
                if not out.terms:
                    return out
        return out

    # -- substitution ---------------------------------------------------------

    def substitute_vars(self, mapping: Mapping[str, "MPoly | GaussianRational | int | Fraction"]) -> "MPoly":
        """Substitute variables by polynomials or scalar points.

        Images must all live in one common space; unmapped variables map to
        themselves (and must exist in the target space).
        """
        target: VarSpace | None = None
        images: dict[int, MPoly] = {}
        for name, img in mapping.items():
            i = self.space.var_index(name)
            if isinstance(img, MPoly):
                if target is None:
                    target = img.space
                elif target != img.space:
                    raise ValueError("substitution images live in different spaces")
                images[i] = img
        if target is None:
            target = self.space
        for name, img in mapping.items():
            i = self.space.var_index(name)
            if not isinstance(img, MPoly):
                images[i] = MPoly.const(target, gr(img))
        for i, vname in enumerate(self.space.names):
            if i not in images:
                images[i] = MPoly.var(target, vname)
        powers: dict[tuple[int, int], MPoly] = {}

        def img_pow(i: int, k: int) -> MPoly:
            key = (i, k)
            got = powers.get(key)
            if got is None:
                if k == 1:
                    got = images[i]
                else:
                    got = img_pow(i, k - 1) * images[i]
                powers[key] = got
            return got

        out = MPoly.zero(target)
        for e, c in self.terms.items():
            term = MPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * img_pow(i, k)
            out = out + term
        return out

    def eval_vars_zero(self, var_indices: Iterable[int]) -> "MPoly":
        """Set the given variables to zero (cheap special case of substitution)."""
        idx = set(var_indices)
        out = {e: c for e, c in self.terms.items() if not any(e[i] for i in idx)}
        return _mp_make(self.space, out)

    def embed(self, target: VarSpace) -> "MPoly":
        """Reinterpret over a larger space containing all blocks of this one."""
        if target == self.space:
            return self
        pos = [target.var_index(v) for v in self.space.names]
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                ne[pos[i]] = k
            out[tuple(ne)] = c
        return _mp_make(target, out)

    def rename_blocks(self, mapping: Mapping[str, str]) -> "MPoly":
        """Move the polynomial to a space with blocks renamed (same dims)."""
        new_blocks = tuple((mapping.get(n, n), d) for n, d in self.space.blocks)
        target = VarSpace(*new_blocks)
        perm = []
        for n, d in self.space.blocks:
            nn = mapping.get(n, n)
            perm.extend(target.var_index(f"{nn}{i+1}") for i in range(d))
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return _mp_make(target, out)

    def project(self, target: VarSpace) -> "MPoly":
        """Drop blocks absent from target; the dropped variables must not occur."""
        pos = {self.space.var_index(v): j for j, v in enumerate(target.names)}
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                if k:
                    if i not in pos:
                        raise ValueError(f"variable {self.space.names[i]} occurs; cannot project")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return _mp_make(target, out)

    # -- coefficient-level maps -------------------------------------------

    def map_coeffs(self, fn) -> "MPoly":
        out: dict[tuple[int, ...], ParamScalar] = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return _mp_make(self.space, out)

    def substitute_param(self, name: str, value) -> "MPoly":
        return self.map_coeffs(lambda c: c.substitute(name, value))

    def substitute_params(self, mapping: Mapping[str, object]) -> "MPoly":
        return self.map_coeffs(lambda c: c.substitute_many(mapping))

    # -- exact division ------------------------------------------------------

    def exact_div(self, d: "MPoly") -> "MPoly":
        """Exact multivariate division by d under graded lex order.

        Precondition: the leading coefficient of d is a parameter-free unit
        (true for every supported determinant).  Raises DivisibilityViolation
        if a remainder would be left; never truncates.
        """
        self._check_space(d)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        de, dc = d.leading()
        dcv = dc.constant_value()
        if dcv is None or not dcv:
            raise ValueError("divisor leading coefficient must be a nonzero constant")
        dc_inv = dcv.inverse()
        rest = [(e, c) for e, c in d.terms.items() if e != de]
        acc: dict[tuple[int, ...], ParamScalar] = dict(self.terms)
        heap = [(-sum(e), tuple(-v for v in e)) for e in acc]
        heapq.heapify(heap)
        q: dict[tuple[int, ...], ParamScalar] = {}
        while heap:
            negd, nege = heapq.heappop(heap)
            e = tuple(-v for v in nege)
            c = acc.pop(e, None)
            if c is None or not c:
                continue
            qe = mi_sub(e, de)
            if any(v < 0 for v in qe):
                acc[e] = c
                raise DivisibilityViolation(
                    f"division leaves remainder with leading monomial {e}",
                    remainder=_mp_make(self.space, acc),
                )
            qc = c.scale(dc_inv)
            q[qe] = qc
            for e2, c2 in rest:
                ke = mi_add(qe, e2)
                sub = qc * c2
                prev = acc.get(ke)
                if prev is None:
                    acc[ke] = -sub
                    heapq.heappush(heap, (-sum(ke), tuple(-v for v in ke)))
                else:
                    v = prev - sub
                    if v:
                        acc[ke] = v
                    else:
                        del acc[ke]
        return _mp_make(self.space, q)

    def exact_div_power(self, d: "MPoly", e: int) -> "MPoly":
        out = self
        for _ in range(e):
            out = out.exact_div(d)
        return out

    def __repr__(self):
        from .parsing import poly_to_text

        return f"<{poly_to_text(self)}>"


def _mp_make(space: VarSpace, terms: dict) -> MPoly:
    out = MPoly.__new__(MPoly)
    out.space = space
    out.terms = terms
    return out
