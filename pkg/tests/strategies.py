from fractions import Fraction

from hypothesis import strategies as st

from grammarcalc.laurent import LaurentPoly, Monomial

VARS = ("x", "y", "z")

coefs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
monomials = st.dictionaries(st.sampled_from(VARS), st.integers(-2, 3), max_size=3).map(Monomial)
polys = st.dictionaries(monomials, coefs, max_size=4).map(LaurentPoly)
units = st.tuples(monomials, coefs.filter(bool)).map(lambda t: LaurentPoly.monomial(*t))
nonneg_polys = st.dictionaries(
    st.dictionaries(st.sampled_from(VARS), st.integers(0, 3), max_size=3).map(Monomial),
    coefs,
    max_size=4,
).map(LaurentPoly)
