"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from rhocalc.lcfield import AsymptoticScalar

exponents = st.builds(
    lambda den, num: Fraction(num, den),
    st.integers(1, 4),
    st.integers(-12, 12),
).filter(lambda q: -3 <= q <= 3)

coefficients = st.builds(
    lambda sign, mag: sign * mag,
    st.sampled_from((-1.0, 1.0)),
    st.floats(0.5, 4.0),
)


def scalars(order=10, max_terms=6, exps=exponents):
    return st.lists(st.tuples(exps, coefficients), min_size=1, max_size=max_terms).map(
        lambda terms: AsymptoticScalar(terms, order)
    )


nonnull_scalars = scalars().filter(lambda a: not a.is_null())
positive_exponents = st.builds(lambda den, num: Fraction(num, den), st.integers(1, 4), st.integers(1, 8))
infinitesimals = st.lists(st.tuples(positive_exponents, coefficients), min_size=1, max_size=4).map(
    lambda terms: AsymptoticScalar(terms, 10)
).filter(lambda a: not a.is_null())
