"""Exact symbol calculus for covariant bi-differential operators.

The package computes the polynomial symbols of the covariant bi-differential
operators attached to three simple real Jordan algebras by three independent
routes (det-power Rodrigues formula, one-step recurrence, iterated source
operator composition) and verifies the classical identifications with Jacobi
and Gegenbauer polynomials, all in exact Gaussian-rational arithmetic.
"""

from .engine import (
    SourceOperator,
    SymbolFamily,
    bidiff_apply,
    bidiff_operator,
    conjugated_operator,
    covariance_checks,
    iterate_source,
    recurrence_c,
    rodrigues_c,
    source_operator,
    symbol_b,
)
from .errors import (
    BidiffError,
    CovarianceViolation,
    DivisibilityViolation,
    IdentityViolation,
    ParseError,
)
from .jordan import DetPowerExpr, JordanAlgebraSpec, cayley_difference, det_derivative
from .parsing import parse_poly, poly_to_latex, poly_to_text
from .poly import MPoly, VarSpace
from .scalars import GaussianRational, ParamRatio, ParamScalar, param, pochhammer, ps
from .weyl import WeylOperator, eval_base_zero, flat, quantize, sharp, sigma

__version__ = "0.1.0"
