"""Computable asymptotic numbers and asymptotic functions.

Numbers are truncated Levi-Civita series in the infinitesimal scale ``s``
(:mod:`rhocalc.lcfield`); functions are expression trees evaluated at
nearstandard points (:mod:`rhocalc.asymfunc`); :mod:`rhocalc.calculus`
turns limit and constancy statements into executable checks.
"""
from .asymfunc import (
    AsymptoticFunction,
    constant_function,
    differentiate,
    embed_delta,
    embed_heaviside,
    equal_mod_null,
    evaluate,
    is_null_at,
    lift_standard,
)
from .asymvec import (
    AsymptoticPoint,
    AsymptoticVector,
    DomainSpec,
    annulus,
    ball,
    box,
    classify_vector,
    halfline,
    in_ball,
    make_nearstandard,
    norm,
    space,
    standard_point,
    union,
)
from .calculus import (
    LimitReport,
    ScalarReport,
    continuity_check,
    derivative_quotient,
    differentiability_check,
    line_integral_gradient,
    scalar_detect,
    value_map,
)
from .dsl import parse, parse_domain, parse_expr, parse_point, to_source
from .errors import (
    DomainError,
    DSLSyntaxError,
    ExponentError,
    NotConnected,
    NotInfinitesimal,
    NotModerate,
    NotPositive,
    NotRepresentable,
    NullDivision,
    OutsideDomain,
    RhoCalcError,
    UnboundVariable,
)
from .lcfield import (
    AsymptoticComplex,
    AsymptoticScalar,
    Classification,
    Relation,
    SeriesVerdict,
    add,
    cabs,
    cadd,
    cinv,
    classify,
    cmul,
    compare,
    inv,
    lift_analytic,
    mul,
    normalize,
    s,
    sqrt_positive,
    valuation,
    zero_threshold,
)

__all__ = [
    "AsymptoticComplex",
    "AsymptoticFunction",
    "AsymptoticPoint",
    "AsymptoticScalar",
    "AsymptoticVector",
    "Classification",
    "DSLSyntaxError",
    "DomainError",
    "DomainSpec",
    "ExponentError",
    "LimitReport",
    "NotConnected",
    "NotInfinitesimal",
    "NotModerate",
    "NotPositive",
    "NotRepresentable",
    "NullDivision",
    "OutsideDomain",
    "Relation",
    "RhoCalcError",
    "ScalarReport",
    "SeriesVerdict",
    "UnboundVariable",
    "add",
    "annulus",
    "ball",
    "box",
    "cabs",
    "cadd",
    "cinv",
    "classify",
    "classify_vector",
    "cmul",
    "compare",
    "constant_function",
    "continuity_check",
    "derivative_quotient",
    "differentiability_check",
    "differentiate",
    "embed_delta",
    "embed_heaviside",
    "equal_mod_null",
    "evaluate",
    "halfline",
    "in_ball",
    "inv",
    "is_null_at",
    "lift_analytic",
    "lift_standard",
    "line_integral_gradient",
    "make_nearstandard",
    "mul",
    "norm",
    "normalize",
    "parse",
    "parse_domain",
    "parse_expr",
    "parse_point",
    "s",
    "scalar_detect",
    "space",
    "sqrt_positive",
    "standard_point",
    "to_source",
    "union",
    "valuation",
    "value_map",
    "zero_threshold",
]
