"""Smooth primitives that expression trees may compose with.

Each primitive carries normalized Taylor data ``p^(k)(t0)/k!`` for lifting to
series arguments and a rule for infinitely large arguments, which is what
replaces transfer when the argument leaves the finite numbers.

The Gaussian kernel is ``gauss_phi(t) = pi^(-1/2) exp(-t^2)`` and
``gauss_Phi`` is its antiderivative vanishing at -infinity, so that
``delta_rho(x) = rho^-1 gauss_phi(x/rho)`` and ``H_rho(x) = gauss_Phi(x/rho)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .lcfield import InfiniteRule

INV_SQRT_PI = 1.0 / math.sqrt(math.pi)


def _exp_taylor(t0: float, K: int) -> list[float]:
    e = math.exp(t0)
    out, fact = [], 1.0
    for k in range(K + 1):
        if k:
            fact *= k
        out.append(e / fact)
    return out


def _sin_cos_taylor(t0: float, K: int, phase: int) -> list[float]:
    cycle = (math.sin(t0), math.cos(t0), -math.sin(t0), -math.cos(t0))
    out, fact = [], 1.0
    for k in range(K + 1):
        if k:
            fact *= k
        out.append(cycle[(k + phase) % 4] / fact)
    return out


def _log_taylor(t0: float, K: int) -> list[float]:
    out = [math.log(t0)]
    for k in range(1, K + 1):
        # d^k log / dt^k = (-1)^(k-1) (k-1)! t^-k, divided by k!
        out.append((-1) ** (k - 1) / (k * t0 ** k))
    return out


def _hermite_scaled(t0: float, K: int) -> list[float]:
    """``H_k(t0)/k!`` for physicists' Hermite polynomials, k = 0..K."""
    h = [1.0]
    if K >= 1:
        h.append(2.0 * t0)
    for k in range(1, K):
        h.append((2.0 * t0 * h[k] - 2.0 * h[k - 1]) / (k + 1))
    return h[: K + 1]


def gauss_phi(t: float) -> float:
    return INV_SQRT_PI * math.exp(-t * t)


def gauss_Phi(t: float) -> float:
    return 0.5 * math.erfc(-t)


def _gauss_phi_taylor(t0: float, K: int) -> list[float]:
    # phi^(k)(t) = (-1)^k H_k(t) phi(t)
    base = gauss_phi(t0)
    return [(-1) ** k * hk * base for k, hk in enumerate(_hermite_scaled(t0, K))]


def _gauss_Phi_taylor(t0: float, K: int) -> list[float]:
    # Phi^(k) = phi^(k-1), so Phi^(k)/k! = (phi^(k-1)/(k-1)!) / k
    out = [gauss_Phi(t0)]
    if K:
        phi = _gauss_phi_taylor(t0, K - 1)
        out.extend(phi[k - 1] / k for k in range(1, K + 1))
    return out


@dataclass(frozen=True)
class Primitive:
    name: str
    func: Callable[[float], float]
    taylor: Callable[[float, int], list[float]]
    in_domain: Callable[[float], bool]
    plus_infinity: InfiniteRule
    minus_infinity: InfiniteRule

    def at_infinity(self, sign: int) -> InfiniteRule:
        return self.plus_infinity if sign > 0 else self.minus_infinity

    def __call__(self, t: float) -> float:
        return self.func(t)


def _everywhere(t: float) -> bool:
    return True


def _positive(t: float) -> bool:
    return t > 0


EXP = Primitive("exp", math.exp, _exp_taylor, _everywhere,
                InfiniteRule.DIVERGES, InfiniteRule.DECAYS_TO_ZERO)
LOG = Primitive("log", math.log, _log_taylor, _positive,
                InfiniteRule.NOT_REPRESENTABLE, InfiniteRule.OUTSIDE_DOMAIN)
SIN = Primitive("sin", math.sin, lambda t, K: _sin_cos_taylor(t, K, 0), _everywhere,
                InfiniteRule.NOT_REPRESENTABLE, InfiniteRule.NOT_REPRESENTABLE)
COS = Primitive("cos", math.cos, lambda t, K: _sin_cos_taylor(t, K, 1), _everywhere,
                InfiniteRule.NOT_REPRESENTABLE, InfiniteRule.NOT_REPRESENTABLE)
GAUSS_PHI = Primitive("gauss_phi", gauss_phi, _gauss_phi_taylor, _everywhere,
                      InfiniteRule.DECAYS_TO_ZERO, InfiniteRule.DECAYS_TO_ZERO)
GAUSS_CDF = Primitive("gauss_Phi", gauss_Phi, _gauss_Phi_taylor, _everywhere,
                      InfiniteRule.TENDS_TO_ONE, InfiniteRule.DECAYS_TO_ZERO)
# sqrt is evaluated through sqrt_positive, not Taylor data; the entry documents its domain
SQRT = Primitive("sqrt", math.sqrt, lambda t, K: [], _positive,
                 InfiniteRule.NOT_REPRESENTABLE, InfiniteRule.OUTSIDE_DOMAIN)

PRIMITIVES: dict[str, Primitive] = {p.name: p for p in (EXP, LOG, SIN, COS, GAUSS_PHI, GAUSS_CDF, SQRT)}


def primitive(name: str) -> Primitive:
    try:
        return PRIMITIVES[name]
    except KeyError:
        raise KeyError(f"unknown primitive {name!r}; known: {', '.join(sorted(PRIMITIVES))}") from None
