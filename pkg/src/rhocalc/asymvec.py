"""Asymptotic vectors, open domains and nearstandard points ``x + h``.

A point keeps its standard part (plain floats in Omega) separately from its
infinitesimal offset, so membership in Omega never depends on thresholding.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import NotInfinitesimal, OutsideDomain
from .lcfield import (
    DEFAULT_ORDER,
    AsymptoticScalar,
    Classification,
    Relation,
    SeriesVerdict,
    abs_value,
    add,
    classify,
    compare,
    mul,
    scale,
    sqrt_positive,
)


class AsymptoticVector:
    """A d-tuple of scalars sharing one order."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[AsymptoticScalar]):
        coords = tuple(coords)
        if not coords:
            raise ValueError("an asymptotic vector needs at least one coordinate")
        order = min(c.order for c in coords)
        self.coords = tuple(c if c.order == order else c.truncate(order) for c in coords)

    @classmethod
    def zero(cls, d: int, order=DEFAULT_ORDER) -> "AsymptoticVector":
        return cls([AsymptoticScalar.zero(order)] * d)

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def order(self) -> Fraction:
        return self.coords[0].order

    def with_order(self, order) -> "AsymptoticVector":
        return AsymptoticVector([c.with_order(order) for c in self.coords])

    def __add__(self, other: "AsymptoticVector") -> "AsymptoticVector":
        _same_dim(self, other)
        return AsymptoticVector([add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "AsymptoticVector") -> "AsymptoticVector":
        _same_dim(self, other)
        return AsymptoticVector([add(a, -b) for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "AsymptoticVector":
        return AsymptoticVector([-c for c in self.coords])

    def scaled(self, a) -> "AsymptoticVector":
        if isinstance(a, AsymptoticScalar):
            return AsymptoticVector([mul(a, c) for c in self.coords])
        return AsymptoticVector([scale(c, float(a)) for c in self.coords])

    def __getitem__(self, i: int) -> AsymptoticScalar:
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AsymptoticVector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "AsymptoticVector(" + ", ".join(str(c) for c in self.coords) + ")"


def _same_dim(u: AsymptoticVector, v: AsymptoticVector) -> None:
    if u.d != v.d:
        raise ValueError(f"dimension mismatch: {u.d} vs {v.d}")


def norm(v: AsymptoticVector) -> AsymptoticScalar:
    """Euclidean norm; the null number when every coordinate is null at order."""
    if v.d == 1:
        return abs_value(v.coords[0])
    total = None
    for c in v.coords:
        sq = mul(c, c)
        total = sq if total is None else add(total, sq)
    if total.is_null():
        # |x|^2 below s^k only bounds |x| by s^(k/2)
        return AsymptoticScalar.zero(total.order / 2)
    return sqrt_positive(total)


def classify_vector(v: AsymptoticVector) -> Classification:
    return classify(norm(v))


def in_ball(v: AsymptoticVector, n: int) -> SeriesVerdict:
    """Membership in ``B_n = {||x|| < s^n}``.

    A norm equal to ``s^n`` up to order sits on the boundary of an open ball
    and is reported as ``FAILS``; ``INDISTINGUISHABLE`` is reserved for balls
    whose radius ``s^n`` is itself beyond the knowledge horizon.
    """
    if n < 0:
        raise ValueError("ball index must be non-negative")
    r = norm(v)
    rel = compare(r, AsymptoticScalar.monomial(1.0, n, r.order))
    if rel is Relation.LESS:
        return SeriesVerdict.HOLDS
    if rel is Relation.GREATER:
        return SeriesVerdict.FAILS
    return SeriesVerdict.INDISTINGUISHABLE if n >= r.order else SeriesVerdict.FAILS


# -- domains -----------------------------------------------------------------

Point = tuple[float, ...]


@dataclass(frozen=True)
class DomainSpec:
    """An open subset of R^d given by a membership predicate and a deterministic sampler.

    ``sampler(seed, count)`` returns ``count`` points of Omega; the first
    point is a fixed, seed-independent representative (the center of boxes
    and balls), the rest are pseudo-random.
    """

    d: int
    membership: Callable[[Point], bool] = field(compare=False)
    sampler: Callable[[int, int], list] = field(compare=False)
    arcwise_connected: bool = True
    name: str = ""

    def contains(self, x: Sequence[float]) -> bool:
        return len(x) == self.d and bool(self.membership(tuple(float(t) for t in x)))

    def sample(self, count: int, seed: int = 42) -> list[Point]:
        pts = self.sampler(seed, count)
        for p in pts:
            if not self.contains(p):
                raise AssertionError(f"sampler of {self.name} produced {p} outside the domain")
        return pts

    def segment_inside(self, a: Sequence[float], b: Sequence[float], checks: int = 65) -> bool:
        for j in range(checks):
            t = j / (checks - 1)
            if not self.contains([ai + t * (bi - ai) for ai, bi in zip(a, b)]):
                return False
        return True

    def __str__(self) -> str:
        return self.name or f"domain(d={self.d})"


def _rng_points(seed: int, count: int, first: Point, draw: Callable[[random.Random], Point]) -> list[Point]:
    rng = random.Random(seed)
    pts = [first] if count > 0 else []
    while len(pts) < count:
        pts.append(draw(rng))
    return pts


def space(d: int = 1, spread: float = 2.0) -> DomainSpec:
    """All of R^d; samples come from the cube ``[-spread, spread]^d``."""
    def draw(rng):
        return tuple(rng.uniform(-spread, spread) for _ in range(d))

    return DomainSpec(
        d, lambda x: all(math.isfinite(t) for t in x),
        lambda seed, n: _rng_points(seed, n, (0.0,) * d, draw),
        True, "R" if d == 1 else f"R^{d}",
    )


def box(*bounds: float) -> DomainSpec:
    """Open box from ``lo_1, hi_1, lo_2, hi_2, ...``."""
    if len(bounds) < 2 or len(bounds) % 2:
        raise ValueError("box needs pairs of bounds")
    pairs = [(float(bounds[i]), float(bounds[i + 1])) for i in range(0, len(bounds), 2)]
    if any(lo >= hi for lo, hi in pairs):
        raise ValueError("box bounds must satisfy lo < hi")
    d = len(pairs)
    margin = 0.02

    def draw(rng):
        return tuple(rng.uniform(lo + margin * (hi - lo), hi - margin * (hi - lo)) for lo, hi in pairs)

    center = tuple(0.5 * (lo + hi) for lo, hi in pairs)
    label = "box(" + ",".join(f"{lo:g},{hi:g}" for lo, hi in pairs) + ")"
    return DomainSpec(
        d, lambda x: all(lo < t < hi for t, (lo, hi) in zip(x, pairs)),
        lambda seed, n: _rng_points(seed, n, center, draw), True, label,
    )


def halfline(lower: float = 0.0) -> DomainSpec:
    """The open half-line ``(lower, +inf)``; samples in ``(lower, lower + 4)``."""
    lower = float(lower)

    def draw(rng):
        return (lower + rng.uniform(0.05, 4.0),)

    return DomainSpec(
        1, lambda x: x[0] > lower,
        lambda seed, n: _rng_points(seed, n, (lower + 1.0,), draw), True, f"halfline({lower:g})",
    )


def ball(center: Sequence[float], radius: float) -> DomainSpec:
    center = tuple(float(c) for c in center)
    radius = float(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    d = len(center)

    def inside(x):
        return math.dist(x, center) < radius

    def draw(rng):
        while True:
            x = tuple(c + rng.uniform(-radius, radius) for c in center)
            if math.dist(x, center) < 0.98 * radius:
                return x

    label = "ball(" + ",".join(f"{c:g}" for c in center) + f",{radius:g})"
    return DomainSpec(d, inside, lambda seed, n: _rng_points(seed, n, center, draw), True, label)


def annulus(center: Sequence[float], r_inner: float, r_outer: float) -> DomainSpec:
    """Planar open annulus; arcwise connected but not convex."""
    cx, cy = (float(c) for c in center)
    r1, r2 = float(r_inner), float(r_outer)
    if not 0 <= r1 < r2:
        raise ValueError("annulus needs 0 <= r_inner < r_outer")

    def inside(x):
        return r1 < math.hypot(x[0] - cx, x[1] - cy) < r2

    def draw(rng):
        r = rng.uniform(r1 + 0.02 * (r2 - r1), r2 - 0.02 * (r2 - r1))
        t = rng.uniform(0.0, 2.0 * math.pi)
        return (cx + r * math.cos(t), cy + r * math.sin(t))

    first = (cx + 0.5 * (r1 + r2), cy)
    label = f"annulus({cx:g},{cy:g},{r1:g},{r2:g})"
    return DomainSpec(2, inside, lambda seed, n: _rng_points(seed, n, first, draw), True, label)


def union(*parts: DomainSpec) -> DomainSpec:
    """Union of pairwise disjoint open sets, flagged as not arcwise connected."""
    if len(parts) < 2 or len({p.d for p in parts}) != 1:
        raise ValueError("union needs at least two domains of equal dimension")

    def sampler(seed, n):
        pools = [p.sampler(seed + i, n) for i, p in enumerate(parts)]
        return [pools[j % len(parts)][j // len(parts)] for j in range(n)]

    return DomainSpec(
        parts[0].d, lambda x: any(p.membership(x) for p in parts), sampler,
        False, "union(" + ",".join(p.name for p in parts) + ")",
    )


# -- nearstandard points -----------------------------------------------------

@dataclass(frozen=True)
class AsymptoticPoint:
    """``standard + offset`` with ``standard`` in Omega and an infinitesimal offset.

    The stored offset terms are read as an exact representative: whatever is
    at or beyond the order is zero.
    """

    standard: Point
    offset: AsymptoticVector

    @property
    def d(self) -> int:
        return len(self.standard)

    @property
    def order(self) -> Fraction:
        return self.offset.order

    def coordinate(self, i: int, order=None) -> AsymptoticScalar:
        h = self.offset.coords[i]
        if order is not None:
            h = h.with_order(order)
        return add(AsymptoticScalar.constant(self.standard[i], h.order), h)

    def coordinates(self, order=None) -> AsymptoticVector:
        return AsymptoticVector([self.coordinate(i, order) for i in range(self.d)])

    def with_order(self, order) -> "AsymptoticPoint":
        return AsymptoticPoint(self.standard, self.offset.with_order(order))

    def shifted(self, h: AsymptoticVector) -> "AsymptoticPoint":
        """``x + (offset + h)`` for an infinitesimal ``h``; the standard part is unchanged."""
        _require_infinitesimal(h)
        return AsymptoticPoint(self.standard, self.offset + h.with_order(max(h.order, self.order)))

    def __str__(self) -> str:
        names = "xyz" if self.d <= 3 else [f"x{i}" for i in range(self.d)]
        parts = []
        for i in range(self.d):
            h = self.offset.coords[i]
            parts.append(f"{names[i]}={self.standard[i]!r}" + ("" if h.is_null() else f"+({h})"))
        return ", ".join(parts)


def _require_infinitesimal(h: AsymptoticVector) -> None:
    for i, c in enumerate(h.coords):
        if not c.is_null() and c.valuation() <= 0:
            raise NotInfinitesimal(f"offset coordinate {i} has valuation {c.valuation()} <= 0")


def make_nearstandard(x: Sequence[float], h: AsymptoticVector | None = None,
                      dom: DomainSpec | None = None, order=DEFAULT_ORDER) -> AsymptoticPoint:
    x = tuple(float(t) for t in x)
    if h is None:
        h = AsymptoticVector.zero(len(x), order)
    if len(x) != h.d:
        raise ValueError(f"standard part has {len(x)} coordinates, offset has {h.d}")
    if dom is not None and not dom.contains(x):
        raise OutsideDomain(f"{x} is not in {dom}")
    _require_infinitesimal(h)
    return AsymptoticPoint(x, h)


def standard_point(*x: float, order=DEFAULT_ORDER) -> AsymptoticPoint:
    return make_nearstandard(x, None, None, order)
