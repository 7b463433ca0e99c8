"""Truncated Levi-Civita series, the computable stand-in for the asymptotic numbers.

An :class:`AsymptoticScalar` is a finite sum ``c_1 s^q_1 + ... + c_k s^q_k``
with rational exponents ``q_1 < ... < q_k`` and double coefficients, stamped
with a knowledge *order* ``N``.  Everything at or beyond ``s^N`` is treated as
null, so two numbers whose difference has no stored terms are
*indistinguishable at order*; nothing finer can be certified.

Exponents are handled as :class:`fractions.Fraction` at the API boundary.
Internally they are integers on the grid ``1/L`` with ``L = lcm(1..64)``, which
keeps the hot loops on machine-sized ints.  The zero threshold ``tau`` is read
from a context variable (see :func:`zero_threshold`) so that it can be changed
for a block of code without any shared mutable state.
"""
from __future__ import annotations

import contextlib
import contextvars
import enum
import functools
import math
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError, ExponentError, NotModerate, NotPositive, NotRepresentable, NullDivision

MAX_DENOMINATOR = 64
DEFAULT_TAU = 1e-12
DEFAULT_ORDER = Fraction(10)

_L = math.lcm(*range(1, MAX_DENOMINATOR + 1))

_tau: contextvars.ContextVar[float] = contextvars.ContextVar("rhocalc_tau", default=DEFAULT_TAU)


@contextlib.contextmanager
def zero_threshold(tau: float) -> Iterator[float]:
    """Temporarily replace the absolute zero threshold applied by :func:`normalize`."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    token = _tau.set(float(tau))
    try:
        yield tau
    finally:
        _tau.reset(token)


def current_tau() -> float:
    return _tau.get()


class Relation(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    INDISTINGUISHABLE = "indistinguishable-at-order"


class SeriesVerdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDISTINGUISHABLE = "indistinguishable-at-order"

    def __and__(self, other: "SeriesVerdict") -> "SeriesVerdict":
        if SeriesVerdict.FAILS in (self, other):
            return SeriesVerdict.FAILS
        if SeriesVerdict.INDISTINGUISHABLE in (self, other):
            return SeriesVerdict.INDISTINGUISHABLE
        return SeriesVerdict.HOLDS


class Classification(enum.Enum):
    INFINITESIMAL = "infinitesimal"
    FINITE_APPRECIABLE = "finite-appreciable"
    INFINITELY_LARGE = "infinitely-large"
    NULL_AT_ORDER = "null-at-order"


class InfiniteRule(enum.Enum):
    """What a primitive does at an infinitely large argument of a given sign."""

    DECAYS_TO_ZERO = "decays-to-zero"
    TENDS_TO_ONE = "tends-to-one"
    DIVERGES = "diverges"
    NOT_REPRESENTABLE = "not-representable"
    OUTSIDE_DOMAIN = "outside-domain"


# -- exponents ---------------------------------------------------------------

def exponent(value) -> Fraction:
    """Coerce ``value`` (int, Fraction, ``"p/q"`` string or ``(num, den)`` pair) to an exponent."""
    if isinstance(value, tuple):
        value = Fraction(*value)
    q = value if isinstance(value, Fraction) else Fraction(value)
    if q.denominator > MAX_DENOMINATOR:
        raise ExponentError(f"exponent {q} has denominator > {MAX_DENOMINATOR}")
    return q


@functools.lru_cache(maxsize=4096)
def _to_grid(value) -> int:
    q = exponent(value)
    return q.numerator * (_L // q.denominator)


def _from_grid(k: int) -> Fraction:
    return Fraction(k, _L)


def _check_grid(k: int) -> None:
    if _L // math.gcd(k, _L) > MAX_DENOMINATOR:
        raise ExponentError(f"exponent {_from_grid(k)} has denominator > {MAX_DENOMINATOR}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- the real field ----------------------------------------------------------

def _normalized(acc: dict, order: int) -> "AsymptoticScalar":
    tau = _tau.get()
    terms = []
    for e in sorted(acc):
        c = acc[e]
        if e >= order or abs(c) < tau:
            continue
        terms.append((e, c))
    out = AsymptoticScalar.__new__(AsymptoticScalar)
    out._terms = tuple(terms)
    out._order = order
    return out


def _accumulate(pairs: Iterable[tuple[int, float]], order: int) -> "AsymptoticScalar":
    acc: dict[int, float] = {}
    for e, c in pairs:
        if e >= order:
            continue
        _check_grid(e)
        acc[e] = acc.get(e, 0.0) + c
    return _normalized(acc, order)


class AsymptoticScalar:
    """An element of the real asymptotic numbers, known up to ``s^order``.

    Instances are immutable.  ``terms`` is a tuple of ``(Fraction, float)``
    pairs in strictly ascending exponent order; ``order`` is a Fraction.
    """

    __slots__ = ("_terms", "_order")

    def __init__(self, terms: Iterable = (), order=DEFAULT_ORDER):
        built = normalize(terms, order)
        self._terms = built._terms
        self._order = built._order

    # construction helpers
    @classmethod
    def constant(cls, c: float, order=DEFAULT_ORDER) -> "AsymptoticScalar":
        return cls.monomial(c, 0, order)

    @classmethod
    def monomial(cls, c: float, q, order=DEFAULT_ORDER) -> "AsymptoticScalar":
        e, k, c = _to_grid(q), _to_grid(order), float(c)
        return cls._grid(((e, c),) if e < k and abs(c) >= _tau.get() else (), k)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER) -> "AsymptoticScalar":
        return cls((), order)

    @classmethod
    def _grid(cls, terms: tuple, order: int) -> "AsymptoticScalar":
        out = cls.__new__(cls)
        out._terms = terms
        out._order = order
        return out

    # inspection
    @property
    def terms(self) -> tuple[tuple[Fraction, float], ...]:
        return tuple((_from_grid(e), c) for e, c in self._terms)

    @property
    def order(self) -> Fraction:
        return _from_grid(self._order)

    def is_null(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def valuation(self) -> Fraction:
        """Least stored exponent; the order itself stands for +infinity when null."""
        return _from_grid(self._terms[0][0] if self._terms else self._order)

    def _val(self) -> int:
        return self._terms[0][0] if self._terms else self._order

    def leading(self) -> tuple[Fraction, float]:
        if not self._terms:
            raise NullDivision("null number has no leading term")
        e, c = self._terms[0]
        return _from_grid(e), c

    def coefficient(self, q) -> float:
        k = _to_grid(q)
        for e, c in self._terms:
            if e == k:
                return c
        return 0.0

    def standard_part(self) -> float:
        """Coefficient at s^0; only meaningful for finite numbers."""
        return self.coefficient(0)

    def truncate(self, order) -> "AsymptoticScalar":
        """Forget everything at or beyond ``s^order`` (never raises the order)."""
        k = min(_to_grid(order), self._order)
        return AsymptoticScalar._grid(tuple(t for t in self._terms if t[0] < k), k)

    def with_order(self, order) -> "AsymptoticScalar":
        """Re-stamp the knowledge order, reading the stored terms as an exact representative."""
        k = _to_grid(order)
        return AsymptoticScalar._grid(tuple(t for t in self._terms if t[0] < k), k)

    def sup_norm(self) -> float:
        return max((abs(c) for _, c in self._terms), default=0.0)

    def l1_norm(self) -> float:
        return sum(abs(c) for _, c in self._terms)

    def evaluate_at(self, rho: float) -> float:
        """Partial-sum value at a concrete numeric rho (for consistency checks)."""
        return sum(c * rho ** float(_from_grid(e)) for e, c in self._terms)

    # arithmetic
    def __neg__(self) -> "AsymptoticScalar":
        return AsymptoticScalar._grid(tuple((e, -c) for e, c in self._terms), self._order)

    def __add__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return scale(self, float(other))
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            if other == 0:
                raise NullDivision("division by zero")
            return scale(self, 1.0 / other)
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return mul(self, inv(other))

    def __rtruediv__(self, other):
        other = _coerce(other, self)
        if other is NotImplemented:
            return other
        return mul(other, inv(self))

    def __pow__(self, k: int) -> "AsymptoticScalar":
        if not isinstance(k, int):
            return NotImplemented
        return power(self, k)

    # structural identity, not field equality
    def __eq__(self, other) -> bool:
        if not isinstance(other, AsymptoticScalar):
            return NotImplemented
        return self._order == other._order and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._terms, self._order))

    def __repr__(self) -> str:
        return f"AsymptoticScalar({format_series(self)})"

    def __str__(self) -> str:
        return format_series(self)


def _coerce(value, like: AsymptoticScalar):
    if isinstance(value, AsymptoticScalar):
        return value
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return AsymptoticScalar._grid(((0, float(value)),) if abs(value) >= _tau.get() else (), like._order)
    return NotImplemented


def normalize(raw: Iterable, order=DEFAULT_ORDER) -> AsymptoticScalar:
    """Quotient-map a raw list of ``(exponent, coefficient)`` pairs at ``order``.

    Duplicate exponents are merged, anything at or beyond ``order`` is
    dropped, and coefficients below the zero threshold vanish.
    """
    k = _to_grid(order)
    return _accumulate(((_to_grid(e), float(c)) for e, c in raw), k)


def s(order=DEFAULT_ORDER) -> AsymptoticScalar:
    """The scale ``s = q(rho)``."""
    return AsymptoticScalar.monomial(1.0, 1, order)


def add(a: AsymptoticScalar, b: AsymptoticScalar) -> AsymptoticScalar:
    order = min(a._order, b._order)
    acc: dict[int, float] = {}
    for e, c in a._terms:
        if e < order:
            acc[e] = c
    for e, c in b._terms:
        if e < order:
            acc[e] = acc.get(e, 0.0) + c
    return _normalized(acc, order)


def sub(a: AsymptoticScalar, b: AsymptoticScalar) -> AsymptoticScalar:
    return add(a, -b)


def scale(a: AsymptoticScalar, c: float) -> AsymptoticScalar:
    """Multiply by an exact real number (no order loss)."""
    if c == 0.0:
        return AsymptoticScalar._grid((), a._order)
    tau = _tau.get()
    return AsymptoticScalar._grid(tuple((e, x * c) for e, x in a._terms if abs(x * c) >= tau), a._order)


def shift(a: AsymptoticScalar, q) -> AsymptoticScalar:
    """Multiply by the exact monomial ``s^q``; the order moves with the terms."""
    k = _to_grid(q)
    for e, _ in a._terms:
        _check_grid(e + k)
    return AsymptoticScalar._grid(tuple((e + k, c) for e, c in a._terms), a._order + k)


def mul(a: AsymptoticScalar, b: AsymptoticScalar) -> AsymptoticScalar:
    """Cauchy product.  Order: ``min(a.order + v(b), b.order + v(a))``."""
    order = min(a._order + b._val(), b._order + a._val())
    acc: dict[int, float] = {}
    bt = b._terms
    for ea, ca in a._terms:
        lim = order - ea
        for eb, cb in bt:
            if eb >= lim:
                break
            e = ea + eb
            acc[e] = acc.get(e, 0.0) + ca * cb
    for e in acc:
        _check_grid(e)
    return _normalized(acc, order)


def power(a: AsymptoticScalar, k: int) -> AsymptoticScalar:
    if k < 0:
        return power(inv(a), -k)
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    if result is None:
        return AsymptoticScalar._grid(((0, 1.0),), a._order)
    return result


def _unit_split(a: AsymptoticScalar, what: str):
    """Write ``a = c s^q (1 + u)``; return ``(q, c, gaps, horizon)`` on the grid.

    ``gaps`` are the terms of ``u`` as ``(exponent, coefficient)`` with
    positive exponents; ``horizon`` is the relative precision ``order - q``.
    """
    if not a._terms:
        raise NullDivision(f"{what} of a null number (no stored terms below order {a.order})")
    q, c = a._terms[0]
    gaps = tuple((e - q, x / c) for e, x in a._terms[1:])
    return q, c, gaps, a._order - q


def _monoid(gaps: tuple, horizon: int) -> list[int]:
    """All sums of non-negative multiples of the gap exponents below ``horizon``, ascending."""
    steps = sorted({g for g, _ in gaps})
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for base in frontier:
            for g in steps:
                e = base + g
                if e < horizon and e not in seen:
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return sorted(seen)


def inv(a: AsymptoticScalar) -> AsymptoticScalar:
    """Multiplicative inverse ``c^-1 s^-q sum_k (-u)^k``.

    The geometric series is summed as the equivalent coefficient recurrence
    ``w_E = -sum_i u_i w_(E - g_i)``, which costs one pass over the support
    instead of repeated Cauchy products.  Result order: ``a.order - 2 v(a)``.
    """
    q, c, gaps, horizon = _unit_split(a, "inverse")
    w: dict[int, float] = {0: 1.0}
    for e in _monoid(gaps, horizon)[1:]:
        total = 0.0
        for g, u in gaps:
            prev = w.get(e - g)
            if prev is not None:
                total -= u * prev
        w[e] = total
    order = a._order - 2 * q
    return _accumulate(((e - q, x / c) for e, x in w.items()), order)


def sqrt_positive(a: AsymptoticScalar) -> AsymptoticScalar:
    """Square root in the positive cone: ``sqrt(c) s^(q/2) (1 + u)^(1/2)``.

    ``(1 + u)^(1/2) = 1 + w`` is obtained from ``2 w + w^2 = u`` term by term,
    which is the binomial series rearranged.  Result order ``a.order - v(a)/2``.
    """
    if not a._terms:
        raise NotPositive(f"square root of a null number (order {a.order})")
    q, c, gaps, horizon = _unit_split(a, "square root")
    if c <= 0:
        raise NotPositive(f"square root of a number with leading coefficient {c!r}")
    if q % 2:
        raise ExponentError(f"s^({_from_grid(q)}/2) leaves the exponent grid")
    half = q // 2
    _check_grid(half)
    u = dict(gaps)
    support = _monoid(gaps, horizon)
    w: dict[int, float] = {}
    for e in support[1:]:
        conv = 0.0
        for e1, x1 in w.items():
            x2 = w.get(e - e1)
            if x2 is not None:
                conv += x1 * x2
        w[e] = 0.5 * (u.get(e, 0.0) - conv)
    root = math.sqrt(c)
    pairs = [(half, root)] + [(e + half, root * x) for e, x in w.items()]
    return _accumulate(pairs, a._order - half)


def compare(a: AsymptoticScalar, b: AsymptoticScalar) -> Relation:
    """Decide ``a < b`` from the sign of the leading coefficient of ``b - a``."""
    d = add(b, -a)
    if not d._terms:
        return Relation.INDISTINGUISHABLE
    return Relation.LESS if d._terms[0][1] > 0 else Relation.GREATER


def valuation(a: AsymptoticScalar) -> Fraction:
    return a.valuation()


def classify(a: AsymptoticScalar) -> Classification:
    if not a._terms:
        return Classification.NULL_AT_ORDER
    v = a._terms[0][0]
    if v < 0:
        return Classification.INFINITELY_LARGE
    if v == 0:
        return Classification.FINITE_APPRECIABLE
    return Classification.INFINITESIMAL


def abs_value(a: AsymptoticScalar) -> AsymptoticScalar:
    if a._terms and a._terms[0][1] < 0:
        return -a
    return a


def agree(a: AsymptoticScalar, b: AsymptoticScalar, rel: float = 1e-10, scale: float | None = None) -> bool:
    """Coefficientwise agreement below the common order.

    The tolerance is ``rel * scale``; by default ``scale`` is the largest
    coefficient magnitude of either operand (at least 1).
    """
    order = min(a._order, b._order)
    ca = {e: c for e, c in a._terms if e < order}
    cb = {e: c for e, c in b._terms if e < order}
    if scale is None:
        scale = max(1.0, a.sup_norm(), b.sup_norm())
    tol = rel * scale
    return all(abs(ca.get(e, 0.0) - cb.get(e, 0.0)) <= tol for e in ca.keys() | cb.keys())


def lift_analytic(p, a: AsymptoticScalar) -> AsymptoticScalar:
    """Evaluate a real-analytic primitive ``p`` at ``a`` by Taylor expansion at the standard part.

    ``p`` must provide ``name``, ``in_domain(t)``, ``taylor(t0, K)`` (the list
    ``p^(k)(t0)/k!`` for ``k = 0..K``) and ``at_infinity(sign)`` returning an
    :class:`InfiniteRule`.  For a finite argument the expansion stops at the
    smallest ``K`` with ``(K + 1) v(a - a0) >= order``.
    """
    order = a._order
    if a._terms and a._terms[0][0] < 0:
        sign = 1 if a._terms[0][1] > 0 else -1
        rule = p.at_infinity(sign)
        side = "+" if sign > 0 else "-"
        if rule is InfiniteRule.DECAYS_TO_ZERO:
            return AsymptoticScalar._grid((), order)
        if rule is InfiniteRule.TENDS_TO_ONE:
            return _accumulate([(0, 1.0)], order)
        if rule is InfiniteRule.DIVERGES:
            raise NotModerate(f"{p.name} at an infinitely large {side} argument exceeds every s^-n")
        if rule is InfiniteRule.OUTSIDE_DOMAIN:
            raise DomainError(f"{p.name} is undefined at an infinitely large {side} argument")
        raise NotRepresentable(f"{p.name} at an infinitely large {side} argument has no series value")
    if order <= 0:
        # the standard part itself is beyond the knowledge horizon
        return AsymptoticScalar._grid((), order)
    a0 = 0.0
    rest = []
    for e, c in a._terms:
        if e == 0:
            a0 = c
        else:
            rest.append((e, c))
    if not p.in_domain(a0):
        raise DomainError(f"{p.name} is undefined at standard part {a0!r}")
    delta = AsymptoticScalar._grid(tuple(rest), order)
    if not rest:
        K = 0
    else:
        K = _ceil_div(order, rest[0][0]) - 1
    coeffs = p.taylor(a0, K)
    acc: dict[int, float] = {0: coeffs[0]} if 0 < order else {}
    powk = delta
    for k in range(1, K + 1):
        ck = coeffs[k]
        for e, c in powk._terms:
            acc[e] = acc.get(e, 0.0) + ck * c
        if k < K:
            powk = mul(powk, delta)
    return _normalized(acc, order)


# -- the complex field -------------------------------------------------------

class AsymptoticComplex:
    """``re + i im`` with both parts at the same order."""

    __slots__ = ("re", "im")

    def __init__(self, re: AsymptoticScalar, im: AsymptoticScalar | None = None):
        if im is None:
            im = AsymptoticScalar._grid((), re._order)
        if re._order != im._order:
            order = min(re._order, im._order)
            re = AsymptoticScalar._grid(tuple(t for t in re._terms if t[0] < order), order)
            im = AsymptoticScalar._grid(tuple(t for t in im._terms if t[0] < order), order)
        self.re = re
        self.im = im

    @classmethod
    def constant(cls, c: complex, order=DEFAULT_ORDER) -> "AsymptoticComplex":
        c = complex(c)
        return cls(AsymptoticScalar.constant(c.real, order), AsymptoticScalar.constant(c.imag, order))

    @property
    def order(self) -> Fraction:
        return self.re.order

    def is_null(self) -> bool:
        return not self.re._terms and not self.im._terms

    def is_real(self) -> bool:
        return not self.im._terms

    def valuation(self) -> Fraction:
        return min(self.re.valuation(), self.im.valuation())

    def terms(self) -> list[tuple[Fraction, complex]]:
        """Merged ``(exponent, complex coefficient)`` list, ascending."""
        merged: dict[int, complex] = {}
        for e, c in self.re._terms:
            merged[e] = complex(c, 0.0)
        for e, c in self.im._terms:
            merged[e] = complex(merged.get(e, 0j).real, c)
        return [(_from_grid(e), merged[e]) for e in sorted(merged)]

    def truncate(self, order) -> "AsymptoticComplex":
        return AsymptoticComplex(self.re.truncate(order), self.im.truncate(order))

    def with_order(self, order) -> "AsymptoticComplex":
        return AsymptoticComplex(self.re.with_order(order), self.im.with_order(order))

    def conjugate(self) -> "AsymptoticComplex":
        return AsymptoticComplex(self.re, -self.im)

    def __neg__(self):
        return AsymptoticComplex(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, AsymptoticComplex):
            return NotImplemented
        return cadd(self, other)

    def __sub__(self, other):
        if not isinstance(other, AsymptoticComplex):
            return NotImplemented
        return cadd(self, -other)

    def __mul__(self, other):
        if not isinstance(other, AsymptoticComplex):
            return NotImplemented
        return cmul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AsymptoticComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"AsymptoticComplex({format_series(self)})"

    def __str__(self) -> str:
        return format_series(self)


def as_complex(x) -> AsymptoticComplex:
    if isinstance(x, AsymptoticComplex):
        return x
    return AsymptoticComplex(x)


def cadd(a: AsymptoticComplex, b: AsymptoticComplex) -> AsymptoticComplex:
    return AsymptoticComplex(add(a.re, b.re), add(a.im, b.im))


def cmul(a: AsymptoticComplex, b: AsymptoticComplex) -> AsymptoticComplex:
    if not a.im._terms and not b.im._terms:
        re = mul(a.re, b.re)
        # the imaginary part is known to the order the full product rule would give
        im_order = min(mul(a.re, b.im)._order, mul(a.im, b.re)._order)
        return AsymptoticComplex(re, AsymptoticScalar._grid((), im_order))
    return AsymptoticComplex(
        add(mul(a.re, b.re), -mul(a.im, b.im)),
        add(mul(a.re, b.im), mul(a.im, b.re)),
    )


def cinv(a: AsymptoticComplex) -> AsymptoticComplex:
    if not a.im._terms:
        r = inv(a.re)
        return AsymptoticComplex(r, AsymptoticScalar._grid((), r._order))
    denom = inv(add(mul(a.re, a.re), mul(a.im, a.im)))
    return AsymptoticComplex(mul(a.re, denom), -mul(a.im, denom))


def cpower(a: AsymptoticComplex, k: int) -> AsymptoticComplex:
    if k < 0:
        return cpower(cinv(a), -k)
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else cmul(result, base)
        k >>= 1
        if k:
            base = cmul(base, base)
    if result is None:
        return AsymptoticComplex(AsymptoticScalar._grid(((0, 1.0),), a.re._order))
    return result


def cabs(a: AsymptoticComplex) -> AsymptoticScalar:
    """Modulus ``sqrt(re^2 + im^2)``; the null number when both parts are null."""
    if not a.im._terms:
        return abs_value(a.re).truncate(min(a.re.order, a.im.order))
    sq = add(mul(a.re, a.re), mul(a.im, a.im))
    if not sq._terms:
        # a square below s^k only bounds the modulus by s^(k/2)
        return AsymptoticScalar.zero(sq.order / 2)
    return sqrt_positive(sq)


def cagree(a: AsymptoticComplex, b: AsymptoticComplex, rel: float = 1e-10, scale: float | None = None) -> bool:
    if scale is None:
        scale = max(1.0, a.re.sup_norm(), a.im.sup_norm(), b.re.sup_norm(), b.im.sup_norm())
    return agree(a.re, b.re, rel, scale) and agree(a.im, b.im, rel, scale)


# -- printing ----------------------------------------------------------------

def format_coefficient(c: float) -> str:
    """17 significant digits, compact exponent: ``5.6418958354775628e-1``; integers print bare."""
    if c == int(c) and abs(c) < 1e15:
        return str(int(c))
    mant, _, exp = f"{c:.16e}".partition("e")
    return f"{mant}e{int(exp)}"


def format_exponent(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def format_series(x) -> str:
    """Human form ``a*s^q + ... + O(s^N)``, parseable back by the DSL up to the tail."""
    if isinstance(x, AsymptoticComplex):
        items = x.terms()
        order = x.order
    else:
        items = [(q, complex(c, 0.0)) for q, c in x.terms]
        order = x.order
    out = ""
    for q, c in items:
        sign = "+"
        if c.imag == 0.0:
            if c.real < 0:
                sign, c = "-", -c
            coef = format_coefficient(c.real)
        elif c.real == 0.0:
            coef = f"{format_coefficient(c.imag)}*i"
        else:
            im = format_coefficient(abs(c.imag))
            coef = f"({format_coefficient(c.real)}{'-' if c.imag < 0 else '+'}{im}*i)"
        term = coef if q == 0 else f"{coef}*s^{format_exponent(q)}"
        out = f"-{term}" if not out and sign == "-" else (f"{out} {sign} {term}" if out else term)
    tail = f"O(s^{format_exponent(order)})"
    return f"{out} + {tail}" if out else tail
