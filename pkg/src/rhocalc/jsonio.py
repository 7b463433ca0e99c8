"""JSON forms of series and points.

Series::

    {"terms": [{"exp": [num, den], "re": <double>, "im": <double>}, ...], "order": [num, den]}

Doubles are written with 17 significant digits, which reads back to the
same bits, so ``loads_series(dumps_series(x)) == x`` exactly.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction

from .asymvec import AsymptoticPoint, AsymptoticVector
from .lcfield import AsymptoticComplex, AsymptoticScalar, exponent


def _double(c: float) -> str:
    if not math.isfinite(c):
        raise ValueError(f"cannot serialize non-finite coefficient {c!r}")
    return format(c, ".17g")


def _pair(q: Fraction) -> str:
    return f"[{q.numerator}, {q.denominator}]"


def dumps_series(x) -> str:
    """Serialize an AsymptoticScalar or AsymptoticComplex."""
    x = x if isinstance(x, AsymptoticComplex) else AsymptoticComplex(x)
    terms = ", ".join(
        f'{{"exp": {_pair(q)}, "re": {_double(c.real)}, "im": {_double(c.imag)}}}' for q, c in x.terms()
    )
    return f'{{"terms": [{terms}], "order": {_pair(x.order)}}}'


def series_from_dict(data: dict) -> AsymptoticComplex:
    order = exponent(tuple(data["order"]))
    re, im = [], []
    for t in data["terms"]:
        q = exponent(tuple(t["exp"]))
        re.append((q, float(t["re"])))
        im.append((q, float(t.get("im", 0.0))))
    return AsymptoticComplex(AsymptoticScalar(re, order), AsymptoticScalar(im, order))


def loads_series(text: str) -> AsymptoticComplex:
    return series_from_dict(json.loads(text))


def dumps_point(p: AsymptoticPoint) -> str:
    std = ", ".join(_double(x) for x in p.standard)
    coords = ", ".join(dumps_series(h) for h in p.offset.coords)
    return f'{{"standard": [{std}], "coords": [{coords}]}}'


def loads_point(text: str) -> AsymptoticPoint:
    data = json.loads(text)
    offs = [series_from_dict(c) for c in data["coords"]]
    if any(not h.is_real() for h in offs):
        raise ValueError("point offsets must be real")
    return AsymptoticPoint(tuple(float(x) for x in data["standard"]), AsymptoticVector([h.re for h in offs]))
