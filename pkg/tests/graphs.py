"""Digraph fixtures shared by several test modules."""

from semicayley.catalog import catalog_group
from semicayley.digraph import SemiCayleyDigraph
from semicayley.groups import GMultiset, dihedral_group


def classes_of(G, *labels):
    cc = G.conjugacy
    return GMultiset.from_classes(G, sorted({int(cc.class_of[G.index(l)]) for l in labels}))


def s3_example():
    G = catalog_group("S3")
    t = classes_of(G, "(1 2)")
    return SemiCayleyDigraph(G, t, classes_of(G, "(1 2 3)"), t, t)


def a4_example():
    G = catalog_group("A4")
    b = classes_of(G, "(1 2 3)")
    return SemiCayleyDigraph(G, b, b, classes_of(G, "(1 3 2)"), GMultiset.from_elements(G, ["()"]))


def dihedral_example(n):
    G = dihedral_group(n)
    rot = GMultiset.from_elements(G, ["a" if k == 1 else f"a^{k}" for k in range(1, n)])
    refl = GMultiset.from_elements(G, ["b"] + ["ba" if k == 1 else f"ba^{k}" for k in range(1, n)])
    one = GMultiset.from_elements(G, ["1"])
    return SemiCayleyDigraph(G, rot, refl, one, one)


def empty_digraph(G):
    return SemiCayleyDigraph(G, None, None, None, None)
