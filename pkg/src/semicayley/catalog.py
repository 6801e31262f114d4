"""A catalog of every group of order at most 24, one representative per isomorphism type."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .groups import FiniteGroup, GroupError, build_group


def _c(n):
    return {"kind": "cyclic", "params": {"n": n}}


def _ab(*inv):
    return {"kind": "abelian", "params": {"invariants": list(inv)}}


def _d(n):
    return {"kind": "dihedral", "params": {"n": n}}


def _dic(n):
    return {"kind": "dicyclic", "params": {"n": n}}


def _meta(n, k, r, s=0):
    return {"kind": "metacyclic", "params": {"n": n, "k": k, "r": r, "s": s}}


def _x(*factors):
    return {"kind": "product", "params": {"factors": list(factors)}}


_S3 = {"kind": "symmetric", "params": {"n": 3}}
_A4 = {"kind": "alternating", "params": {"n": 4}}
_Q8 = {"kind": "quaternion", "params": {}}

_SPECS: list[tuple[str, dict]] = [
    ("Z1", _c(1)), ("Z2", _c(2)), ("Z3", _c(3)),
    ("Z4", _c(4)), ("Z2^2", _ab(2, 2)),
    ("Z5", _c(5)),
    ("Z6", _c(6)), ("S3", _S3),
    ("Z7", _c(7)),
    ("Z8", _c(8)), ("Z2xZ4", _ab(2, 4)), ("Z2^3", _ab(2, 2, 2)), ("D8", _d(4)), ("Q8", _Q8),
    ("Z9", _c(9)), ("Z3^2", _ab(3, 3)),
    ("Z10", _c(10)), ("D10", _d(5)),
    ("Z11", _c(11)),
    ("Z12", _c(12)), ("Z2xZ6", _ab(2, 6)), ("D12", _d(6)), ("Dic12", _dic(3)), ("A4", _A4),
    ("Z13", _c(13)),
    ("Z14", _c(14)), ("D14", _d(7)),
    ("Z15", _c(15)),
    ("Z16", _c(16)), ("Z4^2", _ab(4, 4)), ("Z2xZ8", _ab(2, 8)), ("Z2^2xZ4", _ab(2, 2, 4)),
    ("Z2^4", _ab(2, 2, 2, 2)), ("D16", _d(8)), ("Q16", _dic(4)), ("SD16", _meta(8, 2, 3)),
    ("M16", _meta(8, 2, 5)), ("Z4:Z4", _meta(4, 4, -1)),
    ("Z2^2:Z4", {"kind": "semidirect", "params": {
        "normal": _ab(2, 2), "acting": _c(4),
        "action": {"1": {"(1,0)": "(0,1)", "(0,1)": "(1,0)"}}}}),
    ("Z2xD8", _x(_c(2), _d(4))), ("Z2xQ8", _x(_c(2), _Q8)),
    ("Pauli", {"kind": "semidirect", "params": {
        "normal": _ab(4, 2), "acting": _c(2),
        "action": {"1": {"(0,1)": "(2,1)", "(1,1)": "(3,1)", "(2,1)": "(0,1)", "(3,1)": "(1,1)"}}}}),
    ("Z17", _c(17)),
    ("Z18", _c(18)), ("Z3xZ6", _ab(3, 6)), ("D18", _d(9)), ("S3xZ3", _x(_S3, _c(3))),
    ("Z3^2:Z2", {"kind": "semidirect", "params": {
        "normal": _ab(3, 3), "acting": _c(2),
        "action": {"1": {f"({i},{j})": f"({-i % 3},{-j % 3})" for i in range(3) for j in range(3)}}}}),
    ("Z19", _c(19)),
    ("Z20", _c(20)), ("Z2xZ10", _ab(2, 10)), ("D20", _d(10)), ("Dic20", _dic(5)), ("F20", _meta(5, 4, 2)),
    ("Z21", _c(21)), ("Z7:Z3", _meta(7, 3, 2)),
    ("Z22", _c(22)), ("D22", _d(11)),
    ("Z23", _c(23)),
    ("Z24", _c(24)), ("Z2xZ12", _ab(2, 12)), ("Z2^2xZ6", _ab(2, 2, 6)),
    ("S4", {"kind": "symmetric", "params": {"n": 4}}),
    ("SL(2,3)", {"kind": "matrix", "params": {"generators": [[[1, 1], [0, 1]], [[0, 2], [1, 0]]],
                                              "modulus": 3, "name": "SL(2,3)"}}),
    ("D24", _d(12)), ("Dic24", _dic(6)), ("Z3:Z8", _meta(3, 8, -1)),
    ("A4xZ2", _x(_A4, _c(2))), ("Z2xD12", _x(_c(2), _d(6))), ("Z4xS3", _x(_c(4), _S3)),
    ("Z2xDic12", _x(_c(2), _dic(3))), ("Z3xD8", _x(_c(3), _d(4))), ("Z3xQ8", _x(_c(3), _Q8)),
    ("Z3:D8", {"kind": "semidirect", "params": {
        "normal": _c(3), "acting": _d(4), "action": {"a": {"1": "2", "2": "1"}, "b": {}}}}),
]

# number of isomorphism types of each order 1..24
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
                13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15}

CATALOG_NAMES = tuple(name for name, _ in _SPECS)


def catalog_spec(name: str) -> dict:
    for n, spec in _SPECS:
        if n.lower() == name.lower():
            return spec
    raise GroupError(f"no catalog group named {name!r}")


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    G = build_group(catalog_spec(name))
    G.name = name
    return G


def catalog(max_order: int = 24) -> list[FiniteGroup]:
    out = []
    for name, _ in _SPECS:
        G = catalog_group(name)
        if G.order <= max_order:
            out.append(G)
    return out


def fingerprint(G: FiniteGroup) -> tuple:
    """Isomorphism invariants: element-order statistics, class sizes, centre, squares, abelianness."""
    orders = tuple(sorted(Counter(G.element_orders.tolist()).items()))
    sizes = tuple(sorted(int(s) for s in G.conjugacy.sizes))
    squares = len(set(int(G.mul[x, x]) for x in range(G.order)))
    centre = sum(1 for s in G.conjugacy.sizes if s == 1)
    # number of elements whose centraliser has each size
    cent = tuple(sorted(Counter(G.order // int(G.conjugacy.sizes[G.conjugacy.class_of[x]])
                                for x in range(G.order)).items()))
    return (G.order, G.is_abelian, orders, sizes, squares, centre, cent)
