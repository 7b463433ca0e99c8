import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strategies import infinitesimals, nonnull_scalars
from rhocalc.asymvec import (
    AsymptoticVector,
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
from rhocalc.errors import NotInfinitesimal, OutsideDomain
from rhocalc.lcfield import AsymptoticScalar, Classification, SeriesVerdict, agree, mul, s

PROPS = settings(max_examples=100, deadline=None, derandomize=True)
ONE = AsymptoticScalar.constant(1.0)


def vec(*xs):
    return AsymptoticVector([x if isinstance(x, AsymptoticScalar) else AsymptoticScalar.constant(x) for x in xs])


def test_norm_examples():
    assert norm(vec(3.0, 4.0)).terms == AsymptoticScalar.constant(5.0).terms
    assert norm(vec(s(), 0.0)).terms == s().terms
    r = norm(vec(s(), s()))
    assert r.valuation() == 1
    assert math.isclose(r.leading()[1], math.sqrt(2), rel_tol=1e-15)
    assert agree(mul(r, r), AsymptoticScalar.monomial(2.0, 2))


def test_norm_of_null_vector_is_null():
    assert norm(AsymptoticVector.zero(3)).is_null()


def test_classify_vector_examples():
    assert classify_vector(vec(s(), s() * s())) is Classification.INFINITESIMAL
    assert classify_vector(vec(1.0, s())) is Classification.FINITE_APPRECIABLE
    assert classify_vector(vec(AsymptoticScalar.monomial(1.0, -1), 1.0)) is Classification.INFINITELY_LARGE


def test_in_ball_examples():
    assert in_ball(vec(AsymptoticScalar.monomial(1.0, 3)), 2) is SeriesVerdict.HOLDS
    assert in_ball(vec(s()), 1) is SeriesVerdict.FAILS
    assert in_ball(AsymptoticVector.zero(1), 9) is SeriesVerdict.HOLDS
    assert in_ball(vec(s()), 0) is SeriesVerdict.HOLDS
    assert in_ball(vec(1.0), 1) is SeriesVerdict.FAILS


def test_in_ball_beyond_horizon_is_undecided():
    assert in_ball(AsymptoticVector.zero(1, order=4), 5) is SeriesVerdict.INDISTINGUISHABLE


def test_make_nearstandard_examples():
    p = make_nearstandard([0.0], vec(s()))
    assert p.coordinate(0).terms == s().terms
    q = make_nearstandard([1.0], None, box(0, 2))
    assert q.coordinate(0).terms == ONE.terms
    with pytest.raises(OutsideDomain):
        make_nearstandard([5.0], None, box(0, 1))
    with pytest.raises(NotInfinitesimal):
        make_nearstandard([0.0], vec(1.0))
    with pytest.raises(ValueError):
        make_nearstandard([0.0, 1.0], vec(s()))


def test_shifted_keeps_standard_part():
    p = standard_point(2.0).shifted(vec(s()))
    assert p.standard == (2.0,)
    assert p.coordinate(0).terms == (ONE * 2.0 + s()).terms
    with pytest.raises(NotInfinitesimal):
        p.shifted(vec(2.0))


@pytest.mark.parametrize("dom", [
    space(1), space(3), box(-2, 2), box(0, 1, -1, 3), halfline(0.5), ball((0.0, 0.0), 1.0),
    annulus((0.0, 0.0), 1.0, 2.0), union(box(0, 1), box(3, 4)),
])
def test_samplers_stay_inside_and_are_deterministic(dom):
    pts = dom.sample(30, seed=7)
    assert len(pts) == 30
    assert all(dom.contains(p) for p in pts)
    assert pts == dom.sample(30, seed=7)


def test_first_sample_is_the_center():
    assert box(-2, 2).sample(3, seed=1)[0] == (0.0,)
    assert box(-2, 2).sample(3, seed=2)[0] == (0.0,)


def test_annulus_is_connected_but_not_convex():
    dom = annulus((0.0, 0.0), 1.0, 2.0)
    assert dom.arcwise_connected
    assert not dom.contains((0.0, 0.0))
    assert not dom.segment_inside((-1.5, 0.0), (1.5, 0.0))
    assert dom.segment_inside((1.5, 0.0), (0.0, 1.5))


def test_disjoint_union_is_not_connected():
    assert not union(box(0, 1), box(3, 4)).arcwise_connected


def growth(x: AsymptoticScalar) -> float:
    """Rough amplification of rounding error across the expansion of a root or inverse of ``x``."""
    (v, lead), rest = x.terms[0], x.terms[1:]
    if not rest:
        return 1.0
    ratio = max(1.0, 2 * max(abs(c / lead) for _, c in rest))
    gap = min(e - v for e, _ in rest)
    return ratio ** float((x.order - v) / gap)


@PROPS
@given(st.lists(nonnull_scalars, min_size=1, max_size=3))
def test_norm_squared_is_sum_of_squares(xs):
    v = AsymptoticVector(xs)
    r = norm(v)
    total = sum((mul(x, x) for x in v.coords), AsymptoticScalar.zero(v.order))
    if total.is_null():
        assert r.is_null() and r.order == total.order / 2
        return
    cond = growth(total)
    assume(cond < 1e6)
    assert agree(mul(r, r), total, rel=1e-12 * cond)


@PROPS
@given(nonnull_scalars, st.sampled_from((-2.0, -0.5, 3.0)))
def test_norm_is_absolutely_homogeneous(x, c):
    v = AsymptoticVector([x, x * 2.0])
    cond = growth(mul(x, x))
    assume(cond < 1e6)
    assert agree(norm(v.scaled(c)), norm(v) * abs(c), rel=1e-12 * cond)


@PROPS
@given(infinitesimals, st.integers(0, 12))
def test_ball_membership_follows_valuation(h, n):
    verdict = in_ball(AsymptoticVector([h]), n)
    v = h.valuation()
    if v > n:
        assert verdict is SeriesVerdict.HOLDS
    elif v < n:
        assert verdict is SeriesVerdict.FAILS


@PROPS
@given(infinitesimals, st.integers(0, 8))
def test_balls_are_nested(h, n):
    v = AsymptoticVector([h])
    if in_ball(v, n + 1) is SeriesVerdict.HOLDS:
        assert in_ball(v, n) is SeriesVerdict.HOLDS
