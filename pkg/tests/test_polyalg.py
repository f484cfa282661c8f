from fractions import Fraction

from hypothesis import given, settings, strategies as st

from gln6j.indexcore import IndexSet, Symbol
from gln6j.polyalg import (DetVar, Monomial, SparsePoly, add, apply_diff, mul, pairing,
                           pairing_by_operator, poly_to_json, render, scale)
from strategies import monomials, polys

A = Symbol("a")


def v(*idx, n=3, sym=A):
    return SparsePoly.var(DetVar(sym, IndexSet(n, idx)))


A1, A2, A3 = v(1), v(2), v(3)


def test_ring_examples():
    assert mul(A1, A2) == SparsePoly.monomial(Monomial.of(*(next(iter(p.variables())) for p in (A1, A2))))
    assert not add(A1, scale(A1, -1))
    assert mul(A1 + A2, A1 - A2) == A1 ** 2 - A2 ** 2


def test_apply_diff_examples():
    assert apply_diff(A1, A1 ** 2) == A1 * 2
    assert apply_diff(A1 * A2, A1 * A2) == SparsePoly.const(1)
    assert apply_diff(A1 ** 2, A1 ** 3) == A1 * 6


def test_pairing_examples():
    assert pairing(A1, A1) == 1
    assert pairing(A1 ** 2, A1 ** 2) == 2
    assert pairing(A1 * A2 + A3, A1 * A2) == 1
    assert pairing(A1, A2) == 0


def test_exact_rationals():
    p = A1 * Fraction(1, 3) + A1 * Fraction(2, 3)
    assert p == A1
    assert render(A1 * Fraction(-1, 2) + A2) == "-1/2*a_{1} + 1/1*a_{2}"
    assert poly_to_json(A1 * 2) == [{"monomial": "a_{1}", "coeff": "2/1"}]


def test_term_order_is_canonical():
    p = v(2, 3) + A1 + v(1, 2) * A3
    q = v(1, 2) * A3 + A1 + v(2, 3)
    assert render(p) == render(q)


def test_zero_coefficients_dropped():
    p = SparsePoly({Monomial(): 0, Monomial.of(DetVar(A, IndexSet(3, (1,)))): 1})
    assert len(p) == 1


@settings(max_examples=60, deadline=None)
@given(polys(3), polys(3))
def test_pairing_symmetric(f, g):
    assert pairing(f, g) == pairing(g, f)


@settings(max_examples=60, deadline=None)
@given(polys(3), polys(3))
def test_pairing_two_routes_agree(f, g):
    assert pairing(f, g) == pairing_by_operator(f, g)


@settings(max_examples=40, deadline=None)
@given(polys(3), polys(3), polys(3), st.fractions(-3, 3, max_denominator=3))
def test_apply_diff_bilinear(f, g, h, c):
    assert apply_diff(f + h * c, g) == apply_diff(f, g) + apply_diff(h, g) * c
    assert apply_diff(f, g + h * c) == apply_diff(f, g) + apply_diff(f, h) * c


@settings(max_examples=30, deadline=None)
@given(polys(3))
def test_apply_diff_unit(g):
    assert apply_diff(SparsePoly.const(1), g) == g


@settings(max_examples=40, deadline=None)
@given(polys(3), polys(3), polys(2))
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f + g) * h == f * h + g * h
    assert f - f == SparsePoly()


@given(monomials(3), monomials(3))
def test_monomial_divides(m1, m2):
    assert m1.divides(m1 * m2)
    assert (m1 * m2).degree() == m1.degree() + m2.degree()
