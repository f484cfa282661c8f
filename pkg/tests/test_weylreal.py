import itertools

import pytest

from gln6j.glaction import act_root, check_semi_invariant
from gln6j.grammar import parse_expr, parse_matrix_monomial
from gln6j.indexcore import IndexSet, Symbol
from gln6j.polyalg import DetVar, SparsePoly
from gln6j.seminv import expand, render_spec
from corpus import determinant_monomials
from gln6j.weylreal import (OverlayError, YoungTableau, collect_determinants, expand_determinant,
                            functional_expansion, highest_vector, membership_check, overlay_poly,
                            proportionality, to_matrix_form, young_overlay)

A = Symbol("a")


def M(text, n=3):
    return SparsePoly.monomial(parse_matrix_monomial(text, n))


def det(*idx, n=3):
    return SparsePoly.var(DetVar(A, IndexSet(n, idx)))


def test_expand_determinant_examples():
    assert expand_determinant(A, IndexSet(2, (1, 2))) == M("a^1_1 a^2_2", 2) - M("a^1_2 a^2_1", 2)
    assert expand_determinant(A, IndexSet(3, (1,))) == M("a^1_1")
    assert expand_determinant(A, IndexSet(3, (2, 3))) == M("a^1_2 a^2_3") - M("a^1_3 a^2_2")
    assert len(expand_determinant(A, IndexSet(4, (1, 2, 3, 4)))) == 24


def test_overlay_example():
    out = young_overlay(parse_matrix_monomial("a^1_1 a^1_2 a^2_3", 3), [2, 1, 0])
    assert out == M("a^1_1 a^1_2 a^2_3") * 2 - M("a^1_2 a^1_3 a^2_1") - M("a^1_1 a^1_3 a^2_2")


def test_overlay_example_in_determinants():
    out = young_overlay(parse_matrix_monomial("a^1_1 a^1_2 a^2_3", 3), [2, 1, 0])
    expected = det(1) * det(2, 3) + det(2) * det(1, 3)
    assert to_matrix_form(expected) == out
    collected = collect_determinants(out, [2, 1, 0])
    assert to_matrix_form(collected) == out
    assert membership_check(collected, [2, 1, 0])


def test_single_cell_overlay():
    assert young_overlay(parse_matrix_monomial("a^1_1", 2), [1, 0]) == M("a^1_1", 2)


def test_overlay_on_minor_is_proportional():
    e = expand_determinant(A, IndexSet(2, (1, 2)))
    assert proportionality(overlay_poly(e, [1, 1]), e) == 2


@pytest.mark.parametrize("text, weight", [
    ("a^1_1 a^2_2", [2, 0, 0]),
    ("a^1_1 a^1_2", [1, 1, 0]),
    ("a^1_1 a^2_2 a^2_3", [1, 2, 0]),
])
def test_overlay_multiplicity_errors(text, weight):
    with pytest.raises(OverlayError):
        young_overlay(parse_matrix_monomial(text, 3), weight)


def test_overlay_mixed_letters_rejected():
    with pytest.raises(OverlayError):
        young_overlay(parse_matrix_monomial("a^1_1 b^1_2", 3), [2, 0, 0])


def test_overlay_independent_of_cell_assignment():
    # same multiset of factors written in a different order
    a = young_overlay(parse_matrix_monomial("a^1_3 a^1_1 a^2_2", 3), [2, 1, 0])
    b = young_overlay(parse_matrix_monomial("a^2_2 a^1_1 a^1_3", 3), [2, 1, 0])
    assert a == b


def test_membership_examples():
    assert membership_check(det(1) ** 2 * det(1, 2), [3, 1, 0])
    assert not membership_check(SparsePoly.var(DetVar(A, IndexSet(2, (1, 2)))), [1, 0])
    assert membership_check(det(1) * det(1, 2, 3), [2, 1, 1])
    with pytest.raises(OverlayError):
        membership_check(SparsePoly(), [1, 0, 0])


def test_membership_rejects_matrix_elements():
    assert not membership_check(M("a^1_1"), [1, 0, 0])


def test_tableau():
    t = YoungTableau((3, 1, 0))
    assert t.rows == [[(1, 1), (1, 2), (1, 3)], [(2, 1)]]
    assert [len(c) for c in t.columns] == [2, 1, 1]
    assert t.hook_product() == 8
    with pytest.raises(OverlayError):
        YoungTableau((1, 2))


def test_eigenvector_property_all_small():
    cases = determinant_monomials()
    assert len(cases) >= 100
    for n, m, weight in cases:
        e = to_matrix_form(SparsePoly.monomial(m))
        if not e:
            continue
        c = proportionality(overlay_poly(e, weight), e)
        assert c is not None and c != 0, (m, weight)
        # the eigenvalue is the hook-length product of the diagram
        assert c == YoungTableau(tuple(weight)).hook_product()


def test_overlay_output_collects_into_representation():
    for text, weight in [("a^1_1 a^1_2 a^2_3", [2, 1, 0]), ("a^1_2 a^1_3 a^2_1 a^3_2", [2, 1, 1]),
                         ("a^1_1 a^1_1 a^2_2", [2, 1, 0]), ("a^1_3 a^2_1", [1, 1, 0])]:
        out = young_overlay(parse_matrix_monomial(text, 3), weight)
        assert out
        dets = collect_determinants(out, weight)
        assert membership_check(dets, weight)
        assert to_matrix_form(dets) == out


def test_collect_failure():
    with pytest.raises(OverlayError):
        collect_determinants(M("a^2_1"), [1, 0, 0])


@pytest.mark.parametrize("weight", [[1, 0, 0], [2, 1, 0], [2, 1, 1], [3, 1, 0], [2, 2, 1]])
def test_highest_vector(weight):
    hv = highest_vector(weight, 3)
    assert membership_check(hv, weight)
    res = check_semi_invariant(hv, 3)
    e = to_matrix_form(hv)
    for i, j in itertools.combinations(range(1, 4), 2):
        assert not act_root(i, j, hv)
    # lower indexes carry the weight in the determinant form
    assert res.weight is None or len(res.weight) == 3
    counts = [0, 0, 0]
    for v, k in next(iter(e.terms)):
        counts[v.col - 1] += k
    assert counts == weight


SMALL = ["((a1 b1))", "((a1 a2 b1))", "((c1 c2 b2)(b1 a1 a2))", "((a1 b1))^2", "((a1 b1))((a1 c1))",
         "((a1 c1)(c2 c1))", "((b1 a2 a1))^2", "((c1 c2 a1)(a1 b1 b2))", "((a1 a2 b1 c1))",
         "((a1 b1 b2 c1))", "((b1 b2 c1 c2))^2"]


@pytest.mark.parametrize("text", SMALL)
def test_chain_expansion_matches_functional_construction(text):
    n = len(text.split(")")[0].split())
    spec = parse_expr(text, n)
    c = proportionality(functional_expansion(spec), to_matrix_form(expand(spec).detpoly))
    assert c is not None and c != 0, render_spec(spec)


def test_functional_construction_gl4_pair():
    spec = parse_expr("((a1 a2 a3 b1)(b2 c1 c2 c3))", 4)
    c = proportionality(functional_expansion(spec), to_matrix_form(expand(spec).detpoly))
    assert c not in (None, 0)


def test_repeated_slot_vanishes_in_both_constructions():
    spec = parse_expr("((a1 a1)(a2 a2))", 2)
    assert not functional_expansion(spec)
    assert expand(spec).is_zero
