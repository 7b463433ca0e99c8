"""Limit, differentiability and constancy checks for asymptotic functions.

The quantifier forms "for every n there is an m such that every h in the
ball B_m moves the value by less than s^n" are run over a finite family of
probe offsets.  A witness ``m(n)`` is the smallest ball index for which all
probes inside that ball pass; the probe census is reported alongside so a
verdict can be judged against what was actually tried.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .asymfunc import (
    AsymptoticFunction,
    constant_function,
    evaluate,
    gradient,
    is_null_at,
    sample_points,
)
from .asymvec import AsymptoticPoint, AsymptoticVector, in_ball, norm
from .errors import NotConnected, NullDivision, OutsideDomain
from .lcfield import (
    DEFAULT_ORDER,
    AsymptoticComplex,
    AsymptoticScalar,
    Relation,
    SeriesVerdict,
    cabs,
    cadd,
    cinv,
    cmul,
    compare,
    format_series,
)

PROBE_COEFFICIENTS = (1.0, -1.0, 0.37)


@dataclass(frozen=True)
class Probe:
    """An infinitesimal offset ``c * s^k`` along ``direction``."""

    coefficient: float
    valuation: int
    direction: tuple[float, ...]

    def vector(self, order) -> AsymptoticVector:
        return AsymptoticVector([
            AsymptoticScalar.monomial(self.coefficient * u, self.valuation, order) for u in self.direction
        ])


def probe_family(d: int, n_max: int) -> list[Probe]:
    """Coefficients {1, -1, 0.37} times s^k, k = 1..2*n_max+4, along the axes and the diagonal."""
    directions = [tuple(1.0 if j == i else 0.0 for j in range(d)) for i in range(d)]
    if d > 1:
        directions.append(tuple(1.0 for _ in range(d)))
    return [
        Probe(c, k, u)
        for k in range(1, 2 * n_max + 5)
        for u in directions
        for c in PROBE_COEFFICIENTS
    ]


def working_order(p: AsymptoticPoint, n_max: int) -> Fraction:
    return max(p.order, Fraction(3 * n_max + 5))


@dataclass
class LimitReport:
    check: str
    n_max: int
    witnesses: list[tuple[int, int | None]]
    verdict: SeriesVerdict
    probes: int
    undecided: int = 0
    seed: int = 42
    # (probe valuation, valuation of the measured quantity or None when null)
    valuations: list[tuple[int, Fraction | None]] = field(default_factory=list)

    def witness(self, n: int) -> int | None:
        return dict(self.witnesses)[n]

    def monotone(self) -> bool:
        ms = [m for _, m in self.witnesses]
        return None not in ms and all(a <= b for a, b in zip(ms, ms[1:]))

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "n_max": self.n_max,
            "witnesses": [{"n": n, "m": m} for n, m in self.witnesses],
            "verdict": self.verdict.name,
            "probes": {"count": self.probes, "undecided": self.undecided},
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def table(self) -> str:
        rows = [f"{self.check}: n_max={self.n_max} probes={self.probes} undecided={self.undecided}"]
        rows += [f"  n={n}  m={'-' if m is None else m}" for n, m in self.witnesses]
        rows.append(f"verdict: {self.verdict.name}")
        return "\n".join(rows)


def _below(x: AsymptoticScalar, n: int) -> SeriesVerdict:
    """Whether ``x < s^n``, as a verdict."""
    rel = compare(x, AsymptoticScalar.monomial(1.0, n, x.order))
    if rel is Relation.LESS:
        return SeriesVerdict.HOLDS
    if rel is Relation.GREATER:
        return SeriesVerdict.FAILS
    return SeriesVerdict.INDISTINGUISHABLE


def _quantifier_search(check: str, measured: list[tuple[Probe, AsymptoticVector, AsymptoticScalar]],
                       n_max: int, seed: int) -> LimitReport:
    top = max((pr.valuation for pr, _, _ in measured), default=0)
    # membership of each probe in each ball is fixed, so tabulate it once
    balls = {m: [in_ball(h, m) is SeriesVerdict.HOLDS for _, h, _ in measured] for m in range(top + 1)}
    witnesses, verdict, undecided = [], SeriesVerdict.HOLDS, 0
    for n in range(1, n_max + 1):
        passes = [_below(q, n) for _, _, q in measured]
        undecided += sum(v is SeriesVerdict.INDISTINGUISHABLE for v in passes)
        found = None
        for m in range(top + 1):
            inside = balls[m]
            if any(inside) and all(v is SeriesVerdict.HOLDS for v, b in zip(passes, inside) if b):
                found = m
                break
        if found is None:
            verdict = verdict & (SeriesVerdict.INDISTINGUISHABLE
                                 if any(v is SeriesVerdict.INDISTINGUISHABLE for v in passes)
                                 else SeriesVerdict.FAILS)
        witnesses.append((n, found))
    vals = [(pr.valuation, None if q.is_null() else q.valuation()) for pr, _, q in measured]
    return LimitReport(check, n_max, witnesses, verdict, len(measured), undecided, seed, vals)


def continuity_check(F: AsymptoticFunction, p: AsymptoticPoint, n_max: int = 5,
                     probes: Sequence[Probe] | None = None, seed: int = 42) -> LimitReport:
    """``lim_{h -> 0} F(p + h) = F(p)`` in the interval topology, up to ``s^n_max``."""
    probes = probe_family(p.d, n_max) if probes is None else probes
    M = working_order(p, n_max)
    base = p.with_order(M)
    f0 = evaluate(F, base, M)
    measured = []
    for pr in probes:
        h = pr.vector(M)
        delta = cadd(evaluate(F, base.shifted(h), M), -f0)
        measured.append((pr, h, cabs(delta)))
    return _quantifier_search("continuity", measured, n_max, seed)


def differentiability_check(F: AsymptoticFunction, p: AsymptoticPoint, n_max: int = 5,
                            probes: Sequence[Probe] | None = None, seed: int = 42) -> LimitReport:
    """``|F(p+h) - F(p) - grad F(p).h| / |h| -> 0``.

    ``valuations`` of the report hold the residual valuations (before the
    division by ``|h|``), which is what growth-rate checks look at.
    """
    probes = probe_family(p.d, n_max) if probes is None else probes
    M = working_order(p, n_max)
    base = p.with_order(M)
    f0 = evaluate(F, base, M)
    grads = gradient(F)
    grad = [evaluate(G, base, M) for G in grads]
    # g*h loses -v(g) orders when the gradient is infinitely large; evaluate g and h
    # that much deeper so the residual stays known through M
    extra = max([-g.valuation() for g in grad if not g.is_null()] + [Fraction(0)])
    if extra:
        grad = [evaluate(G, base.with_order(M + extra), M + extra) for G in grads]
    measured, residual_vals = [], []
    for pr in probes:
        h = pr.vector(M)
        lin = AsymptoticComplex(AsymptoticScalar.zero(M))
        for g, hi in zip(grad, pr.vector(M + extra).coords):
            lin = cadd(lin, cmul(g, AsymptoticComplex(hi)))
        residual = evaluate(F, base.shifted(h), M) - f0 - lin
        residual_vals.append((pr.valuation, None if residual.is_null() else residual.valuation()))
        quotient = cmul(residual, cinv(AsymptoticComplex(norm(h))))
        measured.append((pr, h, cabs(quotient)))
    report = _quantifier_search("differentiability", measured, n_max, seed)
    report.valuations = residual_vals
    return report


def residual_constant(report: LimitReport) -> Fraction | None:
    """Smallest ``c`` with ``v(residual) >= 2 v(h) - c`` over the probes; None when every residual is null."""
    gaps = [2 * k - v for k, v in report.valuations if v is not None]
    return max(gaps) if gaps else None


def derivative_quotient(F: AsymptoticFunction, p: AsymptoticPoint, h: AsymptoticScalar) -> AsymptoticComplex:
    """``(F(p+h) - F(p)) / h`` for a one-dimensional domain, reported at the point's order."""
    if p.d != 1:
        raise ValueError("derivative_quotient needs a one-dimensional point")
    if h.is_null():
        raise NullDivision("increment is null")
    k = max(h.valuation(), Fraction(0))
    M = p.order + 2 * k + 2
    base = p.with_order(M)
    hv = AsymptoticVector([h.with_order(max(h.order, M))])
    diff = evaluate(F, base.shifted(hv), M) - evaluate(F, base, M)
    inv_h = cinv(AsymptoticComplex(hv.coords[0]))
    q = cmul(diff, inv_h)
    return q.truncate(p.order) if q.order > p.order else q


class ValueMap:
    """The pointwise function ``x -> F(x)`` of an asymptotic function."""

    def __init__(self, F: AsymptoticFunction):
        self.F = F

    def __call__(self, p: AsymptoticPoint, order=None) -> AsymptoticComplex:
        return evaluate(self.F, p, order)

    def __repr__(self) -> str:
        return f"ValueMap({self.F.expr!r})"


def value_map(F: AsymptoticFunction) -> ValueMap:
    return ValueMap(F)


@dataclass
class ScalarReport:
    is_scalar: SeriesVerdict
    constant: AsymptoticComplex | None
    gradient_evidence: list[tuple[AsymptoticPoint, list[AsymptoticComplex]]]
    witness: AsymptoticFunction | None = None

    def __post_init__(self):
        if (self.constant is not None) != (self.is_scalar is SeriesVerdict.HOLDS):
            raise ValueError("a constant is reported exactly when the verdict holds")

    def summary(self) -> str:
        if self.is_scalar is SeriesVerdict.HOLDS:
            return f"SCALAR C = {format_series(self.constant)}"
        if self.is_scalar is SeriesVerdict.FAILS:
            for p, grads in self.gradient_evidence:
                if any(not g.is_null() for g in grads):
                    shown = ", ".join(format_series(g) for g in grads)
                    return f"NOT SCALAR: gradient at {p} is ({shown})"
            return "NOT SCALAR: values differ between sample points"
        return "UNDECIDED: gradient is null only at reduced order"


def scalar_detect(F: AsymptoticFunction, samples: int = 20, D: int = 3, seed: int = 42,
                  order=DEFAULT_ORDER) -> ScalarReport:
    """Decide whether ``grad F`` vanishes and, if so, name the constant ``C`` with ``F = C``."""
    if not F.dom.arcwise_connected:
        raise NotConnected(f"{F.dom} is not arcwise connected")
    grads = gradient(F)
    points = sample_points(F.dom, samples, seed, order)
    verdict = SeriesVerdict.HOLDS
    evidence = []
    for p in points:
        evidence.append((p, [evaluate(G, p) for G in grads]))
        for G in grads:
            verdict = verdict & is_null_at(G, p, max(D - 1, 0))
        if verdict is SeriesVerdict.FAILS:
            return ScalarReport(verdict, None, evidence)
    if verdict is not SeriesVerdict.HOLDS:
        return ScalarReport(verdict, None, evidence)
    C = evaluate(F, points[0])
    for p in points[1:]:
        diff = evaluate(F, p) - C
        if not diff.is_null():
            return ScalarReport(SeriesVerdict.FAILS, None, evidence)
    return ScalarReport(SeriesVerdict.HOLDS, C, evidence, constant_function(C, F.dom))


def gauss_legendre_unit(nodes: int) -> list[tuple[float, float]]:
    """Nodes and weights of the Gauss-Legendre rule mapped to [0, 1]."""
    if nodes < 2:
        raise ValueError("at least two quadrature nodes are required")
    t, w = np.polynomial.legendre.leggauss(nodes)
    return [(float((ti + 1.0) / 2.0), float(wi / 2.0)) for ti, wi in zip(t, w)]


def _segment_point(p1: AsymptoticPoint, p2: AsymptoticPoint, t: float) -> AsymptoticPoint:
    std = tuple(a + t * (b - a) for a, b in zip(p1.standard, p2.standard))
    off = p1.offset + (p2.offset - p1.offset).scaled(t)
    return AsymptoticPoint(std, off)


def line_integral_gradient(F: AsymptoticFunction, p1: AsymptoticPoint, p2: AsymptoticPoint,
                           nodes: int = 3) -> AsymptoticComplex:
    """``int_0^1 grad F(p1 + t(p2 - p1)) . (p2 - p1) dt`` by Gauss-Legendre over standard t."""
    if p1.d != p2.d or p1.d != F.dom.d:
        raise ValueError("endpoints and domain disagree on the dimension")
    if not F.dom.segment_inside(p1.standard, p2.standard):
        raise OutsideDomain(f"segment {p1.standard} -> {p2.standard} leaves {F.dom}")
    order = min(p1.order, p2.order)
    direction = [AsymptoticComplex(p2.coordinate(i) - p1.coordinate(i)) for i in range(p1.d)]
    grads = gradient(F)
    total = AsymptoticComplex(AsymptoticScalar.zero(order))
    for t, w in gauss_legendre_unit(nodes):
        q = _segment_point(p1, p2, t)
        for G, dx in zip(grads, direction):
            term = cmul(evaluate(G, q, order), dx)
            total = cadd(total, cmul(AsymptoticComplex.constant(w, order), term))
    return total
