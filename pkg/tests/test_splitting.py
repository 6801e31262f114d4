import itertools

import numpy as np
import pytest
from graphs import a4_example, dihedral_example, empty_digraph, s3_example

from semicayley.catalog import catalog_group
from semicayley.census import digraph_from_classes
from semicayley.chartable import char_on_multiset, character_table
from semicayley.cyclotomic import CycNum
from semicayley.digraph import SemiCayleyDigraph, eigenvalues, i_multisets
from semicayley.groups import GMultiset, abelian_group, class_unions, cyclic_group, table_group
from semicayley.oracle import integrality_bruteforce
from semicayley.splitting import (
    TSubgroup,
    abelian_consistency,
    algebraic_degree,
    bcay_digraph,
    compute_T,
    degree_bcay,
    degree_cayley,
    in_fixed_field,
    is_integral,
    is_square_in_K,
    square_class_group,
)


def full(m):
    from semicayley.groups import units_mod
    return TSubgroup(m, tuple(units_mod(m)))


def test_T_for_examples():
    assert compute_T(i_multisets(s3_example()), 6).elements == (1, 5)
    assert compute_T(i_multisets(a4_example()), 6).elements == (1,)
    assert compute_T(i_multisets(dihedral_example(5)), 10).elements == (1, 3, 7, 9)


def test_T_subgroup_rejects_non_subgroup():
    with pytest.raises(ValueError):
        TSubgroup(10, (1, 3))


def test_fixed_field_membership():
    w = CycNum.root_of_unity(6)
    assert in_fixed_field(CycNum.rational(6, 5), TSubgroup(6, (1, 5)))
    assert not in_fixed_field(w, TSubgroup(6, (1, 5)))
    assert in_fixed_field(w, TSubgroup(6, (1,)))


def test_square_verdicts():
    assert is_square_in_K(CycNum.rational(6, 37), full(6)).status == "nonsquare"
    v = is_square_in_K(CycNum.rational(6, 4), full(6))
    assert v.status == "square" and v.witness in (CycNum.rational(6, 2), CycNum.rational(6, -2))
    w3 = CycNum.root_of_unity(6) ** 2
    v = is_square_in_K(16 * w3, TSubgroup(6, (1,)))
    assert v.status == "square" and v.witness in (4 + 4 * w3, -(4 + 4 * w3))
    # -3 is a square in Q(w6) but not in Q, so over K = Q the root is moved by sigma_5
    v = is_square_in_K(CycNum.rational(6, -3), full(6))
    assert v.status == "nonsquare" and v.certificate["kind"] == "root-outside-K"


def test_square_class_groups_for_examples():
    r = lambda *xs: [CycNum.rational(6, x) for x in xs]
    M = square_class_group(r(37, 61, 4), full(6))
    assert M.basis == r(37, 61) and M.order == 4
    w = CycNum.root_of_unity(6) ** 2
    M = square_class_group([16 * w ** 0, 16 * w * w, 16 * w, CycNum.zero(6)], TSubgroup(6, (1,)))
    assert M.basis == [] and M.order == 1
    M = square_class_group([CycNum.rational(10, x) for x in (5, 85, 20, 20)], full(10))
    assert [b.is_rational() for b in M.basis] == [5, 85]


def test_square_radicands_never_grow_M():
    base = [CycNum.rational(6, x) for x in (37, 61)]
    for extra in (4, 9, 37 * 61, 37 * 4):
        assert square_class_group(base + [CycNum.rational(6, extra)], full(6)).order == 4


def test_s3_degree():
    rep = algebraic_degree(s3_example())
    assert rep.deg == 4 and rep.M_order == 4
    assert rep.sf_description == "Q(sqrt(37), sqrt(61))"
    assert rep.K_description == "Q"
    assert not rep.integral


def test_a4_degree():
    rep = algebraic_degree(a4_example())
    assert rep.deg == 2 and rep.M_order == 1 and rep.K_degree == 2
    assert rep.sf_description == "Q(w6)"


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_dihedral_degree(n):
    rep = algebraic_degree(dihedral_example(n))
    assert [b.is_rational() for b in rep.basis] == [5, 4 * n * n - 4 * n + 5]
    assert rep.deg == 4 and rep.K_description == "Q"


def test_empty_digraph_degree(s3):
    rep = algebraic_degree(empty_digraph(s3))
    assert rep.deg == 1 and rep.sf_description == "Q" and is_integral(empty_digraph(s3))


def test_every_character_value_lies_in_K():
    for g in (s3_example(), a4_example(), dihedral_example(7)):
        rep = algebraic_degree(g)
        for e in rep.eigenvalues:
            assert in_fixed_field(e.trace_part, rep.T) and in_fixed_field(e.radicand, rep.T)


def test_cayley_fast_path():
    Z5 = cyclic_group(5)
    rep = degree_cayley(Z5, ["1", "4"])
    assert rep.T.elements == (1, 4) and rep.deg == 2
    assert degree_cayley(cyclic_group(4), ["1", "2", "3"]).deg == 1
    for name in ("S3", "A4", "Q8", "Z3:Z8"):
        G = catalog_group(name)
        assert degree_cayley(G, G.labels[1:]).deg == 1


def test_cayley_matches_general_pipeline():
    G = catalog_group("Z7:Z3")
    tbl = character_table(G)
    for c in class_unions(G, 2):
        S = GMultiset.from_classes(G, c)
        assert degree_cayley(G, S, tbl).deg == algebraic_degree(SemiCayleyDigraph(G, S, None, None, None), tbl).deg


def test_bcay_fast_path(s3):
    G = s3
    rep = degree_bcay(G, G.labels)
    assert rep.deg == 1
    assert sorted(str(v) for _, v, _ in rep.cayley_values) == ["0", "0", "36"]
    Z2 = cyclic_group(2)
    assert degree_bcay(Z2, ["0"]).deg == 1
    rep = degree_bcay(G, ["(1 2)", "(1 3)", "(2 3)"])
    assert sorted(str(v * d * d) for (k, v, _), d in zip(rep.cayley_values, character_table(G).degrees)) \
        == ["0", "9", "9"]
    assert rep.deg == 1


def test_bcay_matches_general_pipeline():
    for name in ("D10", "Q8", "Dic12"):
        G = catalog_group(name)
        tbl = character_table(G)
        for c in class_unions(G, 2):
            S = GMultiset.from_classes(G, c)
            assert degree_bcay(G, S, tbl).deg == algebraic_degree(bcay_digraph(G, S), tbl).deg


def test_complete_bipartite_is_integral(s3):
    whole = GMultiset(s3, np.ones(6, np.int64))
    assert is_integral(SemiCayleyDigraph(s3, None, None, whole, whole))


def test_symmetric_case_radicands_are_squares():
    # T11 = T22, T12 = T21 self-inverse: each radicand is (2 chi(T12))^2 / d
    G = catalog_group("D12")
    tbl = character_table(G)
    for c11, c12 in itertools.product(class_unions(G, 1), repeat=2):
        T11, T12 = GMultiset.from_classes(G, c11), GMultiset.from_classes(G, c12)
        if T12.inverse() != T12:
            continue
        g = SemiCayleyDigraph(G, T11, T11, T12, T12)
        for e, chi in zip(eigenvalues(g, tbl), tbl):
            x = char_on_multiset(chi, T12)
            assert e.radicand == 4 * x * x


def test_abelian_consistency_cyclic_and_products():
    for G in (cyclic_group(6), abelian_group([2, 4]), abelian_group([3, 3])):
        rng = np.random.default_rng(5)
        for _ in range(30):
            sets = [GMultiset(G, rng.integers(0, 2, G.order)) for _ in range(4)]
            assert abelian_consistency(SemiCayleyDigraph(G, *sets))


def test_integrality_agrees_with_bruteforce_on_s3():
    G = catalog_group("S3")
    tbl = character_table(G)
    for choice in itertools.product(class_unions(G), repeat=4):
        g = digraph_from_classes(G, choice)
        assert is_integral(g, tbl) == integrality_bruteforce(g), choice


def _d8_as_table():
    D8 = catalog_group("D8")
    return table_group(np.asarray(D8.mul), name="D8-table")


@pytest.mark.parametrize("maker", [_d8_as_table, lambda: catalog_group("Q8"),
                                   lambda: catalog_group("Z6"), lambda: catalog_group("Z8")])
def test_integrality_agrees_with_bruteforce_sampled(maker):
    G = maker()
    tbl = character_table(G)
    unions = class_unions(G)
    rng = np.random.default_rng(11)
    for _ in range(300):
        choice = [unions[i] for i in rng.integers(0, len(unions), 4)]
        g = digraph_from_classes(G, choice)
        assert is_integral(g, tbl) == integrality_bruteforce(g), choice
