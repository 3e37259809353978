"""Exact ground ring: Gaussian rationals and polynomials in symbolic parameters.

Plain rationals are ``fractions.Fraction`` throughout the package.  On top of
those this module provides

  * :class:`GaussianRational` -- elements of Q(i), stored as a normalized
    integer triple ``(re_num, im_num, den)`` so that arithmetic on the
    (very common) integer values stays cheap,
  * :class:`ParamScalar`   -- polynomials in the fixed parameter alphabet
    ``(s, t, lambda, mu, alpha, beta, gamma)`` with GaussianRational
    coefficients,
  * :class:`ParamRatio`    -- formal quotients of ParamScalars, compared by
    cross-multiplication (used for Pochhammer-ratio constants).

All values are immutable and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

from .errors import DivisibilityViolation

# Fixed, ordered parameter alphabet.  Every ParamScalar in the package uses
# exponent tuples over exactly this alphabet, which keeps canonical forms and
# printed output deterministic.
PARAMS: tuple[str, ...] = ("s", "t", "lambda", "mu", "alpha", "beta", "gamma")
PARAM_INDEX: dict[str, int] = {name: i for i, name in enumerate(PARAMS)}
NPARAMS = len(PARAMS)
ZERO_EXPS: tuple[int, ...] = (0,) * NPARAMS


class GaussianRational:
    """An element a/d + (b/d)i of Q(i) with gcd(a, b, d) = 1 and d > 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        den = re.denominator * im.denominator
        a = re.numerator * im.denominator
        b = im.numerator * re.denominator
        g = gcd(gcd(abs(a), abs(b)), den)
        if g > 1:
            a //= g
            b //= g
            den //= g
        self.a = a
        self.b = b
        self.d = den

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return _gr_add(self, other)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return _gr_add(self, _gr_neg(other))

    def __neg__(self) -> "GaussianRational":
        return _gr_neg(self)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return _gr_mul(self, other)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        return _gr_mul(self, other.inverse())

    def __pow__(self, e: int) -> "GaussianRational":
        if e < 0:
            return self.inverse() ** (-e)
        out = GR_ONE
        base = self
        while e:
            if e & 1:
                out = _gr_mul(out, base)
            base = _gr_mul(base, base)
            e >>= 1
        return out

    def inverse(self) -> "GaussianRational":
        """Multiplicative inverse; i.i = -1 hence 1/i = -i."""
        if not self:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        # 1 / ((a + bi)/d) = d(a - bi) / (a^2 + b^2)
        n = self.a * self.a + self.b * self.b
        return _gr_make(self.d * self.a, -self.d * self.b, n)

    def conjugate(self) -> "GaussianRational":
        return _gr_make(self.a, -self.b, self.d)

    def is_real(self) -> bool:
        return self.b == 0

    def is_imag(self) -> bool:
        return self.a == 0 and self.b != 0

    def __repr__(self):
        if self.b == 0:
            return str(self.re)
        if self.a == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.b > 0 else '-'}{abs(self.im)}*i)"


def _gr_make(a: int, b: int, d: int) -> GaussianRational:
    """Build a GaussianRational from a raw triple, normalizing it."""
    if d < 0:
        a, b, d = -a, -b, -d
    if d != 1:
        g = gcd(gcd(abs(a), abs(b)), d)
        if g > 1:
            a //= g
            b //= g
            d //= g
    out = GaussianRational.__new__(GaussianRational)
    out.a = a
    out.b = b
    out.d = d
    return out


def _gr_add(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    if x.d == y.d:
        if x.d == 1:
            out = GaussianRational.__new__(GaussianRational)
            out.a = x.a + y.a
            out.b = x.b + y.b
            out.d = 1
            return out
        return _gr_make(x.a + y.a, x.b + y.b, x.d)
    return _gr_make(x.a * y.d + y.a * x.d, x.b * y.d + y.b * x.d, x.d * y.d)


def _gr_neg(x: GaussianRational) -> GaussianRational:
    out = GaussianRational.__new__(GaussianRational)
    out.a = -x.a
    out.b = -x.b
    out.d = x.d
    return out


def _gr_mul(x: GaussianRational, y: GaussianRational) -> GaussianRational:
    if x.b == 0 and y.b == 0:
        if x.d == 1 and y.d == 1:
            out = GaussianRational.__new__(GaussianRational)
            out.a = x.a * y.a
            out.b = 0
            out.d = 1
            return out
        return _gr_make(x.a * y.a, 0, x.d * y.d)
    return _gr_make(
        x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a, x.d * y.d
    )


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_MINUS_ONE = GaussianRational(-1)
GR_I = GaussianRational(0, 1)
GR_MINUS_I = GaussianRational(0, -1)


def gr(value) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational to a GaussianRational."""
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


ScalarLike = Union[int, Fraction, GaussianRational, "ParamScalar"]


class ParamScalar:
    """A polynomial over the fixed parameter alphabet with Q(i) coefficients.

    ``terms`` maps an exponent tuple over :data:`PARAMS` to a nonzero
    GaussianRational.  The empty dict is the zero element.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], GaussianRational] | None = None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ParamScalar":
        return _ps_make({})

    @staticmethod
    def from_gaussian(value) -> "ParamScalar":
        c = gr(value)
        return _ps_make({ZERO_EXPS: c} if c else {})

    @staticmethod
    def param(name: str) -> "ParamScalar":
        if name not in PARAM_INDEX:
            raise ValueError(f"unknown parameter {name!r}")
        e = [0] * NPARAMS
        e[PARAM_INDEX[name]] = 1
        return _ps_make({tuple(e): GR_ONE})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> GaussianRational | None:
        """The value as a GaussianRational, or None if any parameter occurs."""
        if not self.terms:
            return GR_ZERO
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            if e == ZERO_EXPS:
                return c
        return None

    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def parameters_used(self) -> tuple[str, ...]:
        used = [False] * NPARAMS
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(p for i, p in enumerate(PARAMS) if used[i])

    # -- ring operations ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, ParamScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "ParamScalar") -> "ParamScalar":
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
                v = _gr_add(prev, c)
                if v:
                    out[e] = v
                else:
                    del out[e]
        return _ps_make(out)

    def __neg__(self) -> "ParamScalar":
        return _ps_make({e: _gr_neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "ParamScalar") -> "ParamScalar":
        return self + (-other)

    def __mul__(self, other: "ParamScalar") -> "ParamScalar":
        if not self.terms or not other.terms:
            return _PS_ZERO
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        out: dict[tuple[int, ...], GaussianRational] = {}
        for e1, c1 in small.items():
            if e1 == ZERO_EXPS:
                for e2, c2 in big.items():
                    v = _gr_mul(c1, c2)
                    prev = out.get(e2)
                    if prev is None:
                        out[e2] = v
                    else:
                        v = _gr_add(prev, v)
                        if v:
                            out[e2] = v
                        else:
                            del out[e2]
                continue
            for e2, c2 in big.items():
                e = tuple(map(sum, zip(e1, e2)))
                v = _gr_mul(c1, c2)
                prev = out.get(e)
                if prev is None:
                    out[e] = v
                else:
                    v = _gr_add(prev, v)
                    if v:
                        out[e] = v
                    else:
                        del out[e]
        return _ps_make(out)

    def scale(self, c) -> "ParamScalar":
        c = gr(c)
        if not c:
            return _PS_ZERO
        if c == GR_ONE:
            return self
        return _ps_make({e: _gr_mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, e: int) -> "ParamScalar":
        if e < 0:
            raise ValueError("negative ParamScalar power")
        out = PS_ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- substitution ------------------------------------------------------

    def substitute(self, name: str, value) -> "ParamScalar":
        """Replace a parameter by a GaussianRational or an affine ParamScalar.

        The replacement must be affine in at most one parameter, e.g.
        ``s -> lambda - 3/2`` or ``s -> s + 1``.
        """
        if name not in PARAM_INDEX:
            raise ValueError(f"unknown parameter {name!r}")
        idx = PARAM_INDEX[name]
        if not isinstance(value, ParamScalar):
            value = ParamScalar.from_gaussian(value)
        if value.degree() > 1 or len(value.parameters_used()) > 1:
            raise ValueError("substitution value must be affine in at most one parameter")
        if not any(e[idx] for e in self.terms):
            return self
        out = _PS_ZERO
        powers: dict[int, ParamScalar] = {0: PS_ONE, 1: value}
        for e, c in self.terms.items():
            k = e[idx]
            if k:
                p = powers.get(k)
                if p is None:
                    j = max(i for i in powers if i <= k)
                    p = powers[j]
                    while j < k:
                        p = p * value
                        j += 1
                        powers[j] = p
                rest = list(e)
                rest[idx] = 0
                out = out + p.scale(c) * _ps_make({tuple(rest): GR_ONE})
            else:
                out = out + _ps_make({e: c})
        return out

    def substitute_many(self, mapping: Mapping[str, "ParamScalar | GaussianRational | int | Fraction"]) -> "ParamScalar":
        """Simultaneous substitution (applied against the original values)."""
        # Stage through temporaries so e.g. {s: t, t: s} swaps correctly.
        out = self
        staged: list[tuple[str, ParamScalar]] = []
        for i, (name, value) in enumerate(mapping.items()):
            if not isinstance(value, ParamScalar):
                value = ParamScalar.from_gaussian(gr(value))
            staged.append((name, value))
        # Detect collisions: a target parameter that is also a source.
        sources = {name for name, _ in staged}
        collide = any(
            p in sources and p != name
            for name, value in staged
            for p in value.parameters_used()
        )
        if not collide:
            for name, value in staged:
                out = out.substitute(name, value)
            return out
        raise ValueError("substitute_many does not support overlapping source/target parameters")

    # -- division (used to clear Pochhammer denominators) -------------------

    def leading(self) -> tuple[tuple[int, ...], GaussianRational]:
        """Leading term under graded lex order on the parameter alphabet."""
        if not self.terms:
            raise ValueError("zero ParamScalar has no leading term")
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def exact_div(self, d: "ParamScalar") -> "ParamScalar":
        """Exact division by d; raises DivisibilityViolation on a remainder."""
        if d.is_zero():
            raise ZeroDivisionError("ParamScalar division by zero")
        de, dc = d.leading()
        dc_inv = dc.inverse()
        rem = dict(self.terms)
        q: dict[tuple[int, ...], GaussianRational] = {}
        while rem:
            e = max(rem, key=lambda t: (sum(t), t))
            c = rem.pop(e)
            qe = tuple(a - b for a, b in zip(e, de))
            if any(v < 0 for v in qe):
                raise DivisibilityViolation(
                    "parameter polynomial not divisible", remainder=_ps_make(rem)
                )
            qc = _gr_mul(c, dc_inv)
            q[qe] = qc
            for e2, c2 in d.terms.items():
                if e2 == de:
                    continue
                ke = tuple(a + b for a, b in zip(qe, e2))
                prev = rem.get(ke, GR_ZERO)
                v = _gr_add(prev, _gr_neg(_gr_mul(qc, c2)))
                if v:
                    rem[ke] = v
                elif ke in rem:
                    del rem[ke]
        return _ps_make(q)

    def __repr__(self):
        from .parsing import param_scalar_to_text

        return param_scalar_to_text(self)


def _ps_make(terms: dict) -> ParamScalar:
    out = ParamScalar.__new__(ParamScalar)
    out.terms = terms
    return out


_PS_ZERO = _ps_make({})
PS_ONE = _ps_make({ZERO_EXPS: GR_ONE})
PS_I = _ps_make({ZERO_EXPS: GR_I})


def ps(value) -> ParamScalar:
    """Coerce int/Fraction/GaussianRational/ParamScalar to a ParamScalar."""
    if isinstance(value, ParamScalar):
        return value
    return ParamScalar.from_gaussian(value)


def param(name: str) -> ParamScalar:
    return ParamScalar.param(name)


def pochhammer(base: ParamScalar, k: int) -> ParamScalar:
    """Rising factorial base(base+1)...(base+k-1); empty product is 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = PS_ONE
    for j in range(k):
        out = out * (base + ps(j))
    return out


class ParamRatio:
    """A formal quotient num/den of ParamScalars with den != 0.

    Only the operations needed for Pochhammer-ratio constants are provided;
    equality is tested by cross-multiplication, no GCD reduction happens.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ParamScalar, den: ParamScalar):
        if den.is_zero():
            raise ZeroDivisionError("ParamRatio with zero denominator")
        self.num = num
        self.den = den

    def __eq__(self, other):
        if not isinstance(other, ParamRatio):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("ParamRatio is not hashable")

    def __mul__(self, other: "ParamRatio") -> "ParamRatio":
        return ParamRatio(self.num * other.num, self.den * other.den)

    def inverse(self) -> "ParamRatio":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero ParamRatio")
        return ParamRatio(self.den, self.num)

    def substitute(self, name: str, value) -> "ParamRatio":
        return ParamRatio(self.num.substitute(name, value), self.den.substitute(name, value))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"
