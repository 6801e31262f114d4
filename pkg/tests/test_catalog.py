from collections import Counter

import pytest

from semicayley.catalog import CATALOG_NAMES, GROUP_COUNTS, catalog, catalog_group, catalog_spec, fingerprint


def test_counts_per_order():
    got = Counter(G.order for G in catalog(24))
    assert dict(got) == GROUP_COUNTS
    # number of isomorphism types of each order up to 24
    assert [GROUP_COUNTS[n] for n in range(1, 25)] == [
        1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15]


def test_pairwise_non_isomorphic():
    prints = [fingerprint(G) for G in catalog(24)]
    assert len(set(prints)) == len(prints) == 74


def test_groups_are_groups():
    for G in catalog(24):
        G.check_axioms(samples=2000)


def test_lookup():
    assert catalog_group("S4").order == 24
    assert catalog_group("SL(2,3)").exponent == 12
    assert catalog_group("Q8") is catalog_group("Q8")
    assert "Pauli" in CATALOG_NAMES
    with pytest.raises(Exception):
        catalog_spec("nope")


def test_max_order_filter():
    assert all(G.order <= 8 for G in catalog(8))
    assert len(catalog(8)) == 14
