"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

The lines are repeated in an "acceptance criteria" section at the end of
the pytest run. ``python3 tests/test_acceptance.py`` runs just this module.
"""
from __future__ import annotations

import math
import sys
import time

import mpmath as mp
import pytest

import acceptance_log

from rhocalc import embed_delta, embed_heaviside, evaluate, standard_point
from rhocalc.suites import run_suite

SEED, ORDER, BUDGET = 42, 10, 10.0
_cache: dict = {}


def suite(name):
    if name not in _cache:
        start = time.perf_counter()
        result = run_suite(name, SEED, ORDER)
        _cache[name] = (result, time.perf_counter() - start)
    return _cache[name]


def report(label: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
    acceptance_log.LINES.append(line)
    print(line)


def whole_suite(label, name):
    result, seconds = suite(name)
    bad = [f"{c.label}: {c.verdict.name} {c.detail}" for c in result.checks if not c.passed]
    ok = not bad and seconds < BUDGET
    report(label, ok, f"{seconds:.1f} s" + ("; " + "; ".join(bad) if bad else ""))
    assert not bad, bad
    assert seconds < BUDGET


def single_check(label, name, check_label):
    result, seconds = suite(name)
    c = result.check(check_label)
    ok = c.passed and seconds < BUDGET
    report(label, ok, c.detail or c.verdict.name)
    assert c.passed, c.detail
    assert seconds < BUDGET


def test_1_field_axioms():
    whole_suite("1  field axioms on 1000 random triples", "field-axioms")


def test_2_order_axioms():
    whole_suite("2  order axioms: s > 0, s < 1/k, trichotomy, compatibility", "order")


def test_3_standard_values():
    whole_suite("3  lifted standard functions give standard values", "standard-values")


def test_4_homomorphism():
    whole_suite("4  value map is an injective ring homomorphism", "homomorphism")


def test_5a_limits_hold_with_monotone_witnesses():
    single_check("5a continuity and differentiability witnesses", "pointwise",
                 "continuity and differentiability hold with monotone witnesses")


def test_5b_residual_growth_constant():
    single_check("5b differentiability residual constant c_F <= 1", "pointwise",
                 "residual valuation >= 2 v(h) - c_F with c_F <= 1")


def test_5c_difference_quotient():
    single_check("5c difference quotient agrees with F' to v(h)", "pointwise",
                 "v(difference quotient - F') >= v(h)")


def _kernel_leading(F, q):
    """Leading coefficient of the value at 0, recomputed numerically by the oracle."""
    import oracle

    with mp.workdps(60):
        rho = mp.mpf("1e-20")
        return oracle.value(F, standard_point(0.0), rho) * rho ** (-q)


def test_6_distribution_values():
    result, seconds = suite("distributions")
    d, H = embed_delta(), embed_heaviside()
    zero = standard_point(0.0, order=ORDER)
    # closed forms of the Gaussian kernel, cross-checked against high-precision evaluation
    expected = [
        (d, -1, 1 / math.sqrt(math.pi), 1e-9),
        (d * d, -2, 1 / math.pi, 1e-9),
        (H * d, -1, 1 / (2 * math.sqrt(math.pi)), 1e-9),
        (H, 0, 0.5, 1e-12),
    ]
    problems = []
    for F, q, value, tol in expected:
        if abs(float(_kernel_leading(F, q)) - value) > 1e-15:
            problems.append(f"oracle disagrees with closed form {value}")
        terms = evaluate(F, zero, ORDER).terms()
        if not terms or terms[0][0] != q or abs(terms[0][1] - value) > tol:
            problems.append(f"{F.expr}: {terms[:1]}")
    bad = [c.label for c in result.checks if not c.passed]
    ok = not problems and not bad and seconds < BUDGET
    report("6  delta and heaviside values at 0 and 1", ok, "; ".join(problems + bad))
    assert ok


def test_7_scalars_and_line_integrals():
    whole_suite("7  scalar detection and gradient line integrals", "fundamental")


def test_8_representation_independence():
    whole_suite("8  values do not depend on the representative", "representation")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
