"""Genus-lowering operators: hand-checked values, linearity, invariants."""

import random
from fractions import Fraction

import pytest

from stratacalc import (
    AmbientSignature,
    DecoratedGraph,
    SignatureError,
    TautClass,
    arithmetic_genus,
    component_count,
    cut_edges,
    disjoint_union,
    fundamental_class,
    invariance_operator,
    invariance_parts,
    monomial_class,
    reduce_genus,
    single_vertex,
    split_vertices,
    validate,
)

from oracles import random_decorated_graph


def cls(ambient, *terms):
    return TautClass(ambient, terms)


# -------------------------------------------------------------------- cutting

def test_cut_no_edges_gives_zero():
    out = cut_edges(single_vertex(3, kappa=(1,)))
    assert out.is_zero


def test_cut_bridge_two_term_class():
    bridge = DecoratedGraph((1, 1), (), ((0, 0, 1, 0),))
    out = cut_edges(bridge)   # labels i=1, j=2
    amb = AmbientSignature(1, frozenset({1, 2}), 2)
    psi_on_i = disjoint_union(single_vertex(1, [(1, 1)]), single_vertex(1, [(2, 0)]))
    psi_on_j = disjoint_union(single_vertex(1, [(1, 0)]), single_vertex(1, [(2, 1)]))
    expected = cls(amb, (psi_on_i, 1), (psi_on_j, -1))
    assert out == expected


def test_cut_self_loop():
    loop = DecoratedGraph((2,), (), ((0, 0, 0, 0),))
    out = cut_edges(loop)
    amb = AmbientSignature(2, frozenset({1, 2}), 2)
    expected = cls(amb,
                   (single_vertex(2, [(1, 1), (2, 0)]), 1),
                   (single_vertex(2, [(1, 0), (2, 1)]), -1))
    assert out == expected


def test_cut_multiplies_existing_psi():
    # decorated bridge: psi^2 already on one end
    bridge = DecoratedGraph((1, 1), (), ((0, 2, 1, 0),))
    out = cut_edges(bridge)
    deep = disjoint_union(single_vertex(1, [(1, 3)]), single_vertex(1, [(2, 0)]))
    assert out.coefficient_of(deep) == Fraction(1, 2)


# ------------------------------------------------------------ genus reduction

def test_reduce_smooth_genus2():
    out = reduce_genus(single_vertex(2))
    amb = AmbientSignature(1, frozenset({1, 2}), 2)
    assert out == cls(amb, (single_vertex(1, [(1, 0), (2, 0)]), Fraction(-1, 2)))


def test_reduce_genus1_one_leg():
    out = reduce_genus(single_vertex(1, [(1, 0)]))   # new labels 2, 3
    amb = AmbientSignature(0, frozenset({1, 2, 3}), 2)
    expected = cls(amb, (single_vertex(0, [(1, 0), (2, 0), (3, 0)]), Fraction(-1, 2)))
    assert out == expected


def test_reduce_all_rational_gives_zero():
    assert reduce_genus(single_vertex(0, [(1, 0), (2, 0), (3, 0)])).is_zero


# ------------------------------------------------------------------ splitting

def test_split_smooth_genus2():
    out = split_vertices(single_vertex(2))
    amb = AmbientSignature(1, frozenset({1, 2}), 2)
    pair = disjoint_union(single_vertex(1, [(1, 0)]), single_vertex(1, [(2, 0)]))
    assert out == cls(amb, (pair, Fraction(-1, 2)))


def test_split_genus6_kappa_witness_term():
    out = split_vertices(single_vertex(6, kappa=(1,)))
    witness = disjoint_union(single_vertex(5, [(1, 0)], (1,)),
                             single_vertex(1, [(2, 0)]))
    assert out.coefficient_of(witness) == Fraction(-1, 2)


def test_split_genus1_gives_zero():
    assert split_vertices(single_vertex(1, [(1, 0)])).is_zero


def test_split_repeated_kappa_multiplicity():
    # kappa_1^2 on genus 6: the balanced split receives both distributions
    out = split_vertices(single_vertex(6, kappa=(1, 1)))
    balanced = disjoint_union(single_vertex(3, [(1, 0)], (1,)),
                              single_vertex(3, [(2, 0)], (1,)))
    assert out.coefficient_of(balanced) == -1


# ----------------------------------------------------------------- operator

def test_operator_term_census_kappa1_genus6():
    """Full image of kappa_1 on the unmarked genus-6 ambient: one genus
    reduction term plus the ten ordered-split/kappa-side combinations,
    every coefficient -1/2."""
    out = invariance_operator(monomial_class(6, 0, kappa=(1,)))
    assert len(out) == 11
    assert all(c == Fraction(-1, 2) for _, _, c in out.items())
    reduced = single_vertex(5, [(1, 0), (2, 0)], (1,))
    assert out.coefficient_of(reduced) == Fraction(-1, 2)
    for a in range(1, 6):
        with_i = disjoint_union(single_vertex(a, [(1, 0)], (1,)),
                                single_vertex(6 - a, [(2, 0)]))
        with_j = disjoint_union(single_vertex(a, [(1, 0)]),
                                single_vertex(6 - a, [(2, 0)], (1,)))
        assert out.coefficient_of(with_i) == Fraction(-1, 2)
        assert out.coefficient_of(with_j) == Fraction(-1, 2)


def test_operator_worked_value_genus2():
    out = invariance_operator(fundamental_class(2, 0))
    amb = AmbientSignature(1, frozenset({1, 2}), 2)
    joined = single_vertex(1, [(1, 0), (2, 0)])
    pair = disjoint_union(single_vertex(1, [(1, 0)]), single_vertex(1, [(2, 0)]))
    expected = cls(amb, (joined, Fraction(-1, 2)), (pair, Fraction(-1, 2)))
    assert out == expected


def test_operator_zero_in_zero_out():
    z = fundamental_class(2, 0).scale(0)
    assert invariance_operator(z).is_zero


def test_operator_rejects_disconnected_ambient():
    amb = AmbientSignature(1, frozenset({1, 2}), 2)
    pair = disjoint_union(single_vertex(1, [(1, 0)]), single_vertex(1, [(2, 0)]))
    with pytest.raises(SignatureError):
        invariance_operator(TautClass(amb, [(pair, 1)]))


def test_operator_linearity_exact():
    rng = random.Random(556677)
    for _ in range(10):
        g = rng.randint(3, 6)
        n = rng.randint(0, 2)
        mons = [monomial_class(g, n, kappa=(1,)),
                monomial_class(g, n, kappa=(2,)),
                monomial_class(g, n, kappa=(1, 1))]
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        x, y = mons[rng.randrange(3)], mons[rng.randrange(3)]
        lhs = invariance_operator(a * x + b * y)
        rhs = a * invariance_operator(x) + b * invariance_operator(y)
        assert lhs == rhs


def test_experimental_gate():
    x = fundamental_class(3, 0)
    with pytest.raises(ValueError):
        invariance_operator(x, level=2)
    out = invariance_operator(x, level=2, experimental=True)
    assert not out.is_zero


def test_cut_level2_coefficients():
    bridge = DecoratedGraph((1, 1), (), ((0, 0, 1, 0),))
    out = cut_edges(bridge, level=2)   # (-1)^2/2 = +1/2 on the j side
    deep = disjoint_union(single_vertex(1, [(1, 2)]), single_vertex(1, [(2, 0)]))
    other = disjoint_union(single_vertex(1, [(1, 0)]), single_vertex(1, [(2, 2)]))
    assert out.coefficient_of(deep) == 1
    assert out.coefficient_of(other) == 1


# ----------------------------------------------------------- invariant suite

def _class_of(graph):
    amb = AmbientSignature(arithmetic_genus(graph),
                           frozenset(graph.markings()), 1)
    return TautClass(amb, [(graph, 1)])


def test_operator_invariants_random():
    rng = random.Random(90210)
    checked = 0
    while checked < 40:
        g = random_decorated_graph(rng, genus_range=(1, 6))
        x = _class_of(g)
        out = invariance_operator(x)
        n_marks = len(x.ambient.markings)
        expected_marks = tuple(range(1, n_marks + 3))
        for _, term, _ in out.items():
            assert validate(term) == []
            assert arithmetic_genus(term) == x.ambient.genus - 1
            assert component_count(term) <= 2
            assert term.markings() == expected_marks
        deg = x.degree()
        if isinstance(deg, int) and not out.is_zero:
            assert out.degree() == deg
        checked += 1


def test_operator_determinism():
    rng = random.Random(777)
    for _ in range(10):
        g = random_decorated_graph(rng)
        a = invariance_operator(_class_of(g))
        b = invariance_operator(_class_of(g))
        assert a == b
        assert [f.hex() for f, _, _ in a.items()] == [f.hex() for f, _, _ in b.items()]


def test_separation_property():
    """2-component, edge-free terms with psi^0 on both new legs come only
    from vertex splitting."""
    rng = random.Random(13579)
    for _ in range(25):
        g = random_decorated_graph(rng, genus_range=(1, 6))
        x = _class_of(g)
        parts = invariance_parts(x)
        i_lab = max(x.ambient.markings, default=0) + 1
        j_lab = i_lab + 1

        def plain_disconnected(term):
            if term.n_edges or component_count(term) != 2:
                return False
            psi = {m: p for _, m, p in term.legs}
            return psi.get(i_lab, 0) == 0 and psi.get(j_lab, 0) == 0

        for name in ("cut", "reduce"):
            for _, term, _ in parts[name].items():
                assert not plain_disconnected(term), name
        total = parts["cut"] + parts["reduce"] + parts["split"]
        assert total == invariance_operator(x)
