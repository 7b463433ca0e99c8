import json
import math
import random

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from rhocalc.asymfunc import AsymptoticFunction, Const, IntPow, Mul, Var, constant_function, embed_delta, \
    embed_heaviside, evaluate, lift_standard
from rhocalc.asymvec import AsymptoticVector, annulus, box, make_nearstandard, space, standard_point, union
from rhocalc.calculus import (
    continuity_check,
    derivative_quotient,
    differentiability_check,
    gauss_legendre_unit,
    line_integral_gradient,
    probe_family,
    residual_constant,
    scalar_detect,
    value_map,
)
from rhocalc.errors import NotConnected, NullDivision, OutsideDomain
from rhocalc.lcfield import AsymptoticScalar, SeriesVerdict, cagree, s

HOLDS, FAILS = SeriesVerdict.HOLDS, SeriesVerdict.FAILS
PROPS = settings(max_examples=30, deadline=None, derandomize=True)


def phi(t):
    return mp.exp(-t * t) / mp.sqrt(mp.pi)


# name -> (function, oracle f(x, rho), oracle f'(x, rho), point)
CASES = {
    "x^2 at 3": (lift_standard([0, 0, 1]), lambda x, r: x**2, lambda x, r: 2 * x, 3.0),
    "x^3 at 0": (lift_standard([0, 0, 0, 1]), lambda x, r: x**3, lambda x, r: 3 * x**2, 0.0),
    "exp at 1": (lift_standard("exp"), lambda x, r: mp.exp(x), lambda x, r: mp.exp(x), 1.0),
    "sin at 0.5": (lift_standard("sin"), lambda x, r: mp.sin(x), lambda x, r: mp.cos(x), 0.5),
    "delta at 0": (embed_delta(), lambda x, r: phi(x / r) / r, lambda x, r: -2 * x / r**3 * phi(x / r), 0.0),
    "delta at 0.7": (embed_delta(), lambda x, r: phi(x / r) / r, lambda x, r: -2 * x / r**3 * phi(x / r), 0.7),
    "heaviside at 0": (embed_heaviside(), lambda x, r: mp.erfc(-x / r) / 2, lambda x, r: phi(x / r) / r, 0.0),
    "heaviside at -1": (embed_heaviside(), lambda x, r: mp.erfc(-x / r) / 2, lambda x, r: phi(x / r) / r, -1.0),
    "constant 3": (constant_function(3.0), lambda x, r: mp.mpf(3), lambda x, r: 0, 0.2),
}

# Witnesses m(1..5) from the high-precision oracle (oracle.witnesses), frozen.
FROZEN = {
    "x^2 at 3": ([2, 3, 4, 5, 6], [1, 2, 3, 4, 5]),
    "x^3 at 0": ([0, 0, 1, 2, 2], [0, 1, 2, 2, 3]),
    "exp at 1": ([2, 3, 4, 5, 6], [1, 2, 3, 4, 5]),
    "sin at 0.5": ([0, 2, 3, 4, 5], [0, 2, 3, 4, 5]),
    "delta at 0": ([2, 3, 3, 4, 4], [4, 5, 6, 7, 8]),
    "delta at 0.7": ([0, 0, 0, 0, 0], [0, 0, 0, 0, 0]),
    "heaviside at 0": ([2, 3, 4, 5, 6], [2, 3, 3, 4, 4]),
    "heaviside at -1": ([0, 0, 0, 0, 0], [0, 0, 0, 0, 0]),
    "constant 3": ([0, 0, 0, 0, 0], [0, 0, 0, 0, 0]),
}


def ms(report):
    return [m for _, m in report.witnesses]


@pytest.mark.parametrize("name", sorted(CASES))
def test_witnesses_match_frozen_oracle(name):
    F, _, _, x0 = CASES[name]
    p = standard_point(x0)
    cont, diff = continuity_check(F, p, 5), differentiability_check(F, p, 5)
    assert cont.verdict is HOLDS and diff.verdict is HOLDS
    assert cont.monotone() and diff.monotone()
    assert (ms(cont), ms(diff)) == FROZEN[name]


@pytest.mark.parametrize("name", ["x^2 at 3", "delta at 0", "heaviside at 0"])
def test_frozen_witnesses_are_reproduced_by_the_oracle(name):
    _, f, df, x0 = CASES[name]
    assert (oracle.witnesses(f, x0, 5), oracle.witnesses(f, x0, 5, df)) == FROZEN[name]


def test_coarse_probe_family_cannot_witness():
    # only probes of size ~s, where H still moves by an appreciable amount
    rep = continuity_check(embed_heaviside(), standard_point(0.0), 2, probes=probe_family(1, 2)[:3])
    assert rep.verdict is FAILS
    assert rep.witness(1) is None and not rep.monotone()


def test_probe_family_shape():
    assert len(probe_family(1, 5)) == 3 * 14
    assert len(probe_family(2, 5)) == 3 * 14 * 3


def expected_valuations(rep, power):
    """Residual valuation ``power * k``, or null once that reaches the working order 3 n_max + 5."""
    M = 3 * rep.n_max + 5
    return [(k, power * k if power * k < M else None) for k, _ in rep.valuations]


def test_residual_examples():
    # exp(1 + h) - e - e h starts with e h^2 / 2; (3 + h)^2 leaves h^2; h^3 at 0 leaves h^3
    for F, x0, power in ((lift_standard("exp"), 1.0, 2), (lift_standard([0, 0, 1]), 3.0, 2),
                         (lift_standard([0, 0, 0, 1]), 0.0, 3)):
        rep = differentiability_check(F, standard_point(x0), 3)
        assert rep.valuations == expected_valuations(rep, power)
        assert residual_constant(rep) <= 0


def test_residual_constant_of_kernels():
    assert residual_constant(differentiability_check(embed_delta(), standard_point(0.0), 5)) == 3
    assert residual_constant(differentiability_check(embed_heaviside(), standard_point(0.0), 5)) == 2
    assert residual_constant(differentiability_check(constant_function(1.0), standard_point(0.0), 5)) is None


def test_report_json_is_deterministic():
    a = continuity_check(embed_delta(), standard_point(0.0), 3).to_json()
    b = continuity_check(embed_delta(), standard_point(0.0), 3).to_json()
    assert a == b
    data = json.loads(a)
    assert data["witnesses"] == [{"n": 1, "m": 2}, {"n": 2, "m": 3}, {"n": 3, "m": 3}]
    assert data["verdict"] == "HOLDS" and data["seed"] == 42


def test_two_variable_continuity():
    F = AsymptoticFunction(Mul(Var(0), Var(1)), space(2))
    rep = differentiability_check(F, make_nearstandard([1.0, 2.0]), 3)
    assert rep.verdict is HOLDS and rep.monotone()


# -- difference quotients ----------------------------------------------------

def test_quotient_examples():
    F, p = lift_standard([0, 0, 1]), standard_point(3.0)
    assert derivative_quotient(F, p, s()).terms() == [(0, 6.0), (1, 1.0)]
    assert derivative_quotient(F, p, AsymptoticScalar.monomial(1.0, 2)).terms() == [(0, 6.0), (2, 1.0)]
    q = derivative_quotient(lift_standard("sin"), standard_point(0.0), s())
    want = [(0, 1.0), (2, -1 / 6), (4, 1 / 120), (6, -1 / 5040), (8, 1 / 362880)]
    got = q.terms()
    assert [e for e, _ in got] == [e for e, _ in want]
    assert all(math.isclose(a.real, b, rel_tol=1e-12) for (_, a), (_, b) in zip(got, want))


def test_quotient_of_null_increment():
    with pytest.raises(NullDivision):
        derivative_quotient(lift_standard("sin"), standard_point(0.0), AsymptoticScalar.zero())


@PROPS
@given(st.sampled_from(["exp", "sin", "cos"]), st.floats(-2, 2), st.sampled_from((1.0, -0.5, 0.37)),
       st.integers(1, 3))
def test_quotient_approaches_the_derivative(name, x0, c, k):
    F, dF = lift_standard(name), lift_standard({"exp": "exp", "sin": "cos", "cos": "sin"}[name])
    p = standard_point(x0)
    slope = evaluate(dF, p)
    gap = derivative_quotient(F, p, AsymptoticScalar.monomial(c, k)) - (-slope if name == "cos" else slope)
    assert gap.is_null() or gap.valuation() >= k


# -- value map ---------------------------------------------------------------

def test_value_map_examples():
    V = value_map
    assert V(lift_standard("exp"))(standard_point(0.0)).terms() == [(0, 1.0)]
    F, G = lift_standard("sin"), embed_delta()
    rng = random.Random(3)
    for _ in range(10):
        p = make_nearstandard([rng.uniform(-1, 1)], AsymptoticVector([AsymptoticScalar.monomial(rng.random(), 1)]))
        assert V(F + G)(p).terms() == (V(F)(p) + V(G)(p)).terms()
        assert V(F * G)(p).terms() == (V(F)(p) * V(G)(p)).terms()
    assert not V(G)(standard_point(0.0)).is_null()


# -- scalars -----------------------------------------------------------------

def test_scalar_examples():
    c = AsymptoticScalar.constant(3.0) + s()
    rep = scalar_detect(constant_function(c))
    assert rep.is_scalar is HOLDS and rep.constant.terms() == [(0, 3.0), (1, 1.0)]
    trig = lift_standard("sin") ** 2 + lift_standard("cos") ** 2
    rep = scalar_detect(AsymptoticFunction(trig.expr, box(-2, 2)))
    assert rep.is_scalar is HOLDS
    (q, c1), = rep.constant.terms()
    assert q == 0 and abs(c1 - 1) < 1e-10
    assert rep.summary() == "SCALAR C = 1 + O(s^10)"
    rep = scalar_detect(lift_standard([0, 1]))
    assert rep.is_scalar is FAILS and rep.constant is None
    p, grads = rep.gradient_evidence[0]
    assert grads[0].terms() == [(0, 1.0)]
    assert rep.summary().startswith("NOT SCALAR: gradient at x=0.0 is (1")


def test_scalar_needs_a_connected_domain():
    with pytest.raises(NotConnected):
        scalar_detect(constant_function(1.0, union(box(0, 1), box(2, 3))))


def test_scalar_on_an_annulus():
    F = AsymptoticFunction(Const(2.5), annulus((0.0, 0.0), 1.0, 2.0))
    assert scalar_detect(F, samples=6).is_scalar is HOLDS
    G = AsymptoticFunction(Mul(Var(0), Var(1)), annulus((0.0, 0.0), 1.0, 2.0))
    assert scalar_detect(G, samples=6).is_scalar is FAILS


# -- line integrals ----------------------------------------------------------

def test_quadrature_rule():
    rule = gauss_legendre_unit(3)
    assert math.isclose(sum(w for _, w in rule), 1.0, rel_tol=1e-15)
    assert math.isclose(sum(w * t**5 for t, w in rule), 1 / 6, rel_tol=1e-14)
    with pytest.raises(ValueError):
        gauss_legendre_unit(1)


def test_line_integral_examples():
    p1 = standard_point(0.0)
    p2 = make_nearstandard([1.0], AsymptoticVector([s()]))
    got = line_integral_gradient(lift_standard([0, 0, 1]), p1, p2, nodes=2)
    assert cagree(got, evaluate(lift_standard([0, 0, 1]), p2), rel=1e-14)
    got = line_integral_gradient(lift_standard([0, 0, 0, 1]), p1, p2, nodes=2)
    assert [e for e, _ in got.terms()] == [0, 1, 2, 3]
    assert all(math.isclose(c.real, b, rel_tol=1e-14) for (_, c), b in zip(got.terms(), (1, 3, 3, 1)))
    assert line_integral_gradient(constant_function(4.0), p1, p2).is_null()


def test_line_integral_leaving_the_domain():
    dom = annulus((0.0, 0.0), 1.0, 2.0)
    F = AsymptoticFunction(IntPow(Var(0), 2), dom)
    with pytest.raises(OutsideDomain):
        line_integral_gradient(F, make_nearstandard([-1.5, 0.0]), make_nearstandard([1.5, 0.0]))


@PROPS
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=6), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5),
       st.floats(-1, 1))
def test_line_integral_is_exact_for_polynomials(coeffs, a, b, c):
    F = lift_standard(coeffs, box(-2, 2))
    p1 = make_nearstandard([a], AsymptoticVector([AsymptoticScalar.monomial(c, 1)]))
    p2 = make_nearstandard([b], AsymptoticVector([AsymptoticScalar.monomial(0.5, 2)]))
    got = line_integral_gradient(F, p1, p2, nodes=3)
    want = evaluate(F, p2) - evaluate(F, p1)
    assert cagree(got, want, rel=1e-10)
