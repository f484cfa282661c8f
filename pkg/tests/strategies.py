"""Hypothesis strategies for small polynomials in free antisymmetric variables."""

from hypothesis import strategies as st

from gln6j.indexcore import IndexSet, Symbol
from gln6j.polyalg import DetVar, Monomial, SparsePoly


def det_vars(n: int, letters=("a", "b")):
    sets = st.lists(st.integers(1, n), min_size=1, max_size=n, unique=True).map(
        lambda xs: IndexSet(n, tuple(sorted(xs))))
    return st.builds(DetVar, st.sampled_from([Symbol(x) for x in letters]), sets)


def monomials(n: int, max_vars: int = 3):
    return st.lists(st.tuples(det_vars(n), st.integers(1, 2)), max_size=max_vars).map(Monomial)


def polys(n: int, max_terms: int = 4):
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
    return st.dictionaries(monomials(n), coeffs, max_size=max_terms).map(SparsePoly)
