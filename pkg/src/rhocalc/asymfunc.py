"""Asymptotic functions as expression trees, and their values at nearstandard points.

A tree over the coordinates, complex constants, powers of rho, sums,
products, integer powers and primitive compositions is a representative
``f`` of an asymptotic function ``F``.  ``evaluate`` computes the value
``F(x)`` as a series; ``is_null_at`` / ``equal_mod_null`` test membership of
the null ideal on sampled points.

Evaluation treats the leaves (point coordinates, constants, rho powers) as
exact and carries a working order above the requested one, raised until the
result is known through the requested order.  Order losses from negative
powers of rho (as in ``delta``) are thereby absorbed by the guard instead of
eating into the reported order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .asymvec import AsymptoticPoint, AsymptoticVector, DomainSpec, make_nearstandard, space
from .errors import DomainError, OutsideDomain, UnboundVariable
from .lcfield import (
    DEFAULT_ORDER,
    AsymptoticComplex,
    AsymptoticScalar,
    SeriesVerdict,
    as_complex,
    cadd,
    cmul,
    cpower,
    exponent,
    lift_analytic,
    sqrt_positive,
)
from .primitives import COS, EXP, PRIMITIVES, SIN, SQRT, Primitive

MAX_GUARD_ROUNDS = 6
NULL_TEST_OFFSETS = (0.0, 1.0, 0.37)  # offsets 0, s, 0.37 s^2


# -- trees -------------------------------------------------------------------

class Expr:
    """Base class of tree nodes.  Nodes are frozen dataclasses; equality is structural."""

    def __add__(self, other):
        return Add(self, _lift(other))

    def __radd__(self, other):
        return Add(_lift(other), self)

    def __sub__(self, other):
        return Add(self, Mul(Const(-1.0), _lift(other)))

    def __rsub__(self, other):
        return Add(_lift(other), Mul(Const(-1.0), self))

    def __neg__(self):
        return Mul(Const(-1.0), self)

    def __mul__(self, other):
        return Mul(self, _lift(other))

    def __rmul__(self, other):
        return Mul(_lift(other), self)

    def __truediv__(self, other):
        return Mul(self, IntPow(_lift(other), -1))

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return IntPow(self, k)


def _lift(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float, complex)) and not isinstance(x, bool):
        return Const(complex(x))
    raise TypeError(f"cannot use {type(x).__name__} in an expression")


@dataclass(frozen=True, eq=True)
class Var(Expr):
    index: int


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "value", complex(self.value))


@dataclass(frozen=True, eq=True)
class RhoPow(Expr):
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", exponent(self.q))


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, eq=True)
class IntPow(Expr):
    base: Expr
    k: int


@dataclass(frozen=True, eq=True)
class Comp(Expr):
    prim: str
    arg: Expr

    def __post_init__(self):
        if self.prim not in PRIMITIVES:
            raise KeyError(f"unknown primitive {self.prim!r}")


ZERO = Const(0.0)
ONE = Const(1.0)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Add, Mul)):
        return (e.left, e.right)
    if isinstance(e, IntPow):
        return (e.base,)
    if isinstance(e, Comp):
        return (e.arg,)
    return ()


def walk(e: Expr) -> Iterator[Expr]:
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(children(node))


def max_var(e: Expr) -> int:
    """Largest variable index in the tree, -1 for a tree without variables."""
    return max((n.index for n in walk(e) if isinstance(n, Var)), default=-1)


def tree_size(e: Expr) -> int:
    return sum(1 for _ in walk(e))


def _is_const(e: Expr, value: complex) -> bool:
    return isinstance(e, Const) and e.value == value


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Mul(a, b)


# -- asymptotic functions ----------------------------------------------------

@dataclass(frozen=True)
class AsymptoticFunction:
    """A representative tree together with the open set it lives on."""

    expr: Expr
    dom: DomainSpec

    def __post_init__(self):
        if max_var(self.expr) >= self.dom.d:
            raise UnboundVariable(f"variable index {max_var(self.expr)} is not a coordinate of {self.dom}")

    def _other(self, other) -> Expr:
        if isinstance(other, AsymptoticFunction):
            return other.expr
        return _lift(other)

    def __add__(self, other):
        return AsymptoticFunction(Add(self.expr, self._other(other)), self.dom)

    __radd__ = __add__

    def __sub__(self, other):
        return AsymptoticFunction(self.expr - self._other(other), self.dom)

    def __mul__(self, other):
        return AsymptoticFunction(Mul(self.expr, self._other(other)), self.dom)

    __rmul__ = __mul__

    def __neg__(self):
        return AsymptoticFunction(-self.expr, self.dom)

    def __pow__(self, k: int):
        return AsymptoticFunction(IntPow(self.expr, k), self.dom)

    def __call__(self, p: AsymptoticPoint, order=None) -> AsymptoticComplex:
        return evaluate(self, p, order)


MultiIndex = tuple[int, ...]


def multi_indices(d: int, max_total: int) -> list[MultiIndex]:
    """All multi-indices of length d with ``|alpha| <= max_total``, graded."""
    out = []
    for total in range(max_total + 1):
        for alpha in itertools.product(range(total + 1), repeat=d):
            if sum(alpha) == total:
                out.append(alpha)
    return out


def unit_index(d: int, i: int) -> MultiIndex:
    return tuple(1 if j == i else 0 for j in range(d))


# -- constructors ------------------------------------------------------------

def lift_standard(name, dom: DomainSpec | None = None) -> AsymptoticFunction:
    """Canonical image ``sigma(f)`` of a standard smooth function.

    ``name`` is a primitive name (``"exp"``, ``"sin"``, ...) composed with the
    first coordinate, or a sequence of polynomial coefficients
    ``[c0, c1, ...]`` in the first coordinate.
    """
    dom = dom or space(1)
    x = Var(0)
    if isinstance(name, str):
        return AsymptoticFunction(Comp(name, x), dom)
    coeffs = list(name)
    expr: Expr = ZERO
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        term = Const(c) if k == 0 else (x if k == 1 else IntPow(x, k))
        if k and c != 1:
            term = Mul(Const(c), term)
        expr = _add(expr, term)
    return AsymptoticFunction(expr, dom)


def delta_expr(arg: Expr) -> Expr:
    """``rho^-1 gauss_phi(arg / rho)``."""
    return Mul(RhoPow(-1), Comp("gauss_phi", Mul(arg, RhoPow(-1))))


def heaviside_expr(arg: Expr) -> Expr:
    """``gauss_Phi(arg / rho)``."""
    return Comp("gauss_Phi", Mul(arg, RhoPow(-1)))


def _check_kernel(dom: DomainSpec, kernel: str) -> None:
    if dom.d != 1:
        raise ValueError("distribution embeddings are one-dimensional")
    if kernel != "gaussian":
        raise ValueError(f"unsupported mollifier {kernel!r}; only 'gaussian' is available")


def embed_delta(dom: DomainSpec | None = None, kernel: str = "gaussian") -> AsymptoticFunction:
    dom = dom or space(1)
    _check_kernel(dom, kernel)
    return AsymptoticFunction(delta_expr(Var(0)), dom)


def embed_heaviside(dom: DomainSpec | None = None, kernel: str = "gaussian") -> AsymptoticFunction:
    dom = dom or space(1)
    _check_kernel(dom, kernel)
    return AsymptoticFunction(heaviside_expr(Var(0)), dom)


def constant_function(c, dom: DomainSpec | None = None) -> AsymptoticFunction:
    """``Q(f_c)``: a tree ``sum_i c_i rho^q_i`` without variables."""
    dom = dom or space(1)
    c = as_complex(c) if not isinstance(c, (int, float, complex)) else AsymptoticComplex.constant(c)
    expr: Expr = ZERO
    for q, coef in c.terms():
        term = Const(coef) if q == 0 else Mul(Const(coef), RhoPow(q))
        expr = _add(expr, term)
    return AsymptoticFunction(expr, dom)


# -- differentiation ---------------------------------------------------------

def _prim_derivative(name: str, u: Expr) -> Expr:
    if name == "exp":
        return Comp("exp", u)
    if name == "log":
        return IntPow(u, -1)
    if name == "sin":
        return Comp("cos", u)
    if name == "cos":
        return Mul(Const(-1.0), Comp("sin", u))
    if name == "sqrt":
        return Mul(Const(0.5), IntPow(Comp("sqrt", u), -1))
    if name == "gauss_phi":
        return Mul(Mul(Const(-2.0), u), Comp("gauss_phi", u))
    if name == "gauss_Phi":
        return Comp("gauss_phi", u)
    raise KeyError(name)


def derivative_expr(e: Expr, i: int) -> Expr:
    """Symbolic partial derivative along coordinate ``i``; rho powers are constants."""
    memo: dict[int, Expr] = {}

    def d(node: Expr) -> Expr:
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = ONE if node.index == i else ZERO
        elif isinstance(node, (Const, RhoPow)):
            out = ZERO
        elif isinstance(node, Add):
            out = _add(d(node.left), d(node.right))
        elif isinstance(node, Mul):
            out = _add(_mul(d(node.left), node.right), _mul(node.left, d(node.right)))
        elif isinstance(node, IntPow):
            if node.k == 0:
                out = ZERO
            else:
                lower = node.base if node.k == 2 else IntPow(node.base, node.k - 1)
                if node.k == 1:
                    lower = ONE
                out = _mul(_mul(Const(float(node.k)), lower), d(node.base))
        elif isinstance(node, Comp):
            du = d(node.arg)
            out = ZERO if _is_const(du, 0) else _mul(du, _prim_derivative(node.prim, node.arg))
        else:
            raise TypeError(f"unknown node {node!r}")
        memo[key] = out
        return out

    return d(e)


def differentiate(F: AsymptoticFunction, alpha: Sequence[int]) -> AsymptoticFunction:
    alpha = tuple(alpha)
    if len(alpha) != F.dom.d or any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} does not fit dimension {F.dom.d}")
    expr = F.expr
    for i, times in enumerate(alpha):
        for _ in range(times):
            expr = derivative_expr(expr, i)
    return AsymptoticFunction(expr, F.dom)


def gradient(F: AsymptoticFunction) -> list[AsymptoticFunction]:
    return [differentiate(F, unit_index(F.dom.d, i)) for i in range(F.dom.d)]


# -- evaluation --------------------------------------------------------------

def _guard_hint(e: Expr) -> Fraction:
    """Cheap structural estimate of the order a tree loses to negative rho powers."""
    loss = Fraction(0)
    for node in walk(e):
        if isinstance(node, RhoPow) and node.q < 0:
            loss -= node.q
        elif isinstance(node, IntPow) and node.k < 0:
            loss += 1
    return loss


def _lift_comp(p: Primitive, a: AsymptoticComplex) -> AsymptoticComplex:
    if a.is_real():
        re = a.re
        if p is SQRT:
            if re.is_null():
                raise DomainError("sqrt is not smooth at a null argument")
            if re.valuation() >= 0 and re.standard_part() <= 0:
                raise DomainError(f"sqrt is undefined at standard part {re.standard_part()!r}")
            return AsymptoticComplex(sqrt_positive(re))
        return AsymptoticComplex(lift_analytic(p, re))
    if p is EXP:
        # exp(a + ib) = exp(a) (cos b + i sin b)
        m = AsymptoticComplex(lift_analytic(EXP, a.re))
        rot = AsymptoticComplex(lift_analytic(COS, a.im), lift_analytic(SIN, a.im))
        return cmul(m, rot)
    raise DomainError(f"{p.name} is only implemented for real arguments")


def _evaluate_at(e: Expr, p: AsymptoticPoint, work: Fraction) -> AsymptoticComplex:
    memo: dict[int, AsymptoticComplex] = {}
    coords: dict[int, AsymptoticComplex] = {}

    def ev(node: Expr) -> AsymptoticComplex:
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            if node.index >= p.d:
                raise UnboundVariable(f"variable index {node.index} but the point has {p.d} coordinates")
            v = coords.get(node.index)
            if v is None:
                v = coords[node.index] = AsymptoticComplex(p.coordinate(node.index, work))
            out = v
        elif isinstance(node, Const):
            out = AsymptoticComplex(AsymptoticScalar.constant(node.value.real, work),
                                    AsymptoticScalar.constant(node.value.imag, work))
        elif isinstance(node, RhoPow):
            out = AsymptoticComplex(AsymptoticScalar.monomial(1.0, node.q, work))
        elif isinstance(node, Add):
            out = cadd(ev(node.left), ev(node.right))
        elif isinstance(node, Mul):
            out = cmul(ev(node.left), ev(node.right))
        elif isinstance(node, IntPow):
            out = cpower(ev(node.base), node.k)
        elif isinstance(node, Comp):
            out = _lift_comp(PRIMITIVES[node.prim], ev(node.arg))
        else:
            raise TypeError(f"unknown node {node!r}")
        memo[key] = out
        return out

    return ev(e)


def evaluate(F, p: AsymptoticPoint, order=None) -> AsymptoticComplex:
    """Value ``F(x)`` of an asymptotic function at a nearstandard point.

    ``F`` may be an :class:`AsymptoticFunction` (its domain is checked) or a
    bare :class:`Expr`.  The result is reported at ``order`` (default: the
    point's order) unless the guard rounds run out, in which case the
    smaller order actually reached is kept.
    """
    if isinstance(F, AsymptoticFunction):
        if not F.dom.contains(p.standard):
            raise OutsideDomain(f"standard part {p.standard} is not in {F.dom}")
        expr = F.expr
    else:
        expr = F
    target = Fraction(p.order if order is None else exponent(order))
    guard = _guard_hint(expr)
    best = None
    for _ in range(MAX_GUARD_ROUNDS):
        value = _evaluate_at(expr, p, target + guard)
        if value.order >= target:
            return value.truncate(target)
        best = value
        guard += target - value.order
    return best


def value_scalar(F, p: AsymptoticPoint, order=None) -> AsymptoticScalar:
    """Real part of ``evaluate``; raises if the value has an imaginary part."""
    v = evaluate(F, p, order)
    if not v.is_real():
        raise DomainError("value is not real")
    return v.re


# -- null tests --------------------------------------------------------------

def _null_verdict(v: AsymptoticComplex, target: Fraction) -> SeriesVerdict:
    if not v.is_null():
        return SeriesVerdict.FAILS
    return SeriesVerdict.HOLDS if v.order >= target else SeriesVerdict.INDISTINGUISHABLE


def is_null_at(F: AsymptoticFunction, p: AsymptoticPoint, D: int = 3, order=None) -> SeriesVerdict:
    """Whether every ``d^alpha F`` with ``|alpha| <= D`` has a null value at ``p``."""
    if D < 0:
        raise ValueError("derivative depth must be non-negative")
    target = Fraction(p.order if order is None else exponent(order))
    verdict = SeriesVerdict.HOLDS
    # derivatives are built incrementally so each tree is differentiated once
    trees: dict[MultiIndex, Expr] = {}
    for alpha in multi_indices(F.dom.d, D):
        if sum(alpha) == 0:
            tree = F.expr
        else:
            i = next(j for j, a in enumerate(alpha) if a)
            parent = tuple(a - (j == i) for j, a in enumerate(alpha))
            tree = derivative_expr(trees[parent], i)
        trees[alpha] = tree
        verdict = verdict & _null_verdict(evaluate(AsymptoticFunction(tree, F.dom), p, target), target)
        if verdict is SeriesVerdict.FAILS:
            return verdict
    return verdict


def sample_points(dom: DomainSpec, samples: int, seed: int = 42, order=DEFAULT_ORDER) -> list[AsymptoticPoint]:
    """Sampler points, each combined with the offsets ``0``, ``s`` and ``0.37 s^2``."""
    pts = []
    for x in dom.sample(samples, seed):
        for k, c in enumerate(NULL_TEST_OFFSETS):
            h = AsymptoticVector([AsymptoticScalar.monomial(c, k, order) for _ in range(dom.d)])
            pts.append(make_nearstandard(x, h, dom))
    return pts


def equal_mod_null(F: AsymptoticFunction, G: AsymptoticFunction, samples: int = 20, D: int = 3,
                   seed: int = 42, order=DEFAULT_ORDER) -> SeriesVerdict:
    """Sampled test of ``F - G`` in the null ideal."""
    if F.dom is not G.dom and F.dom != G.dom:
        raise ValueError("functions live on different domains")
    diff = F - G
    verdict = SeriesVerdict.HOLDS
    for p in sample_points(F.dom, samples, seed, order):
        verdict = verdict & is_null_at(diff, p, D)
        if verdict is SeriesVerdict.FAILS:
            break
    return verdict
