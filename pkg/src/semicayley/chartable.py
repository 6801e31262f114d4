"""Irreducible character tables with exact values in Q(w_m), m the group exponent.

Abelian groups and dihedral groups use closed forms; every other group goes
through a Dixon-style computation: simultaneous eigenvectors of the class
multiplication matrices over F_p, then exact lifting of each value from the
eigenvalue multiplicities of the power maps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime

from . import kernels
from .cyclotomic import CycNum, primitive_root_of_unity_mod
from .groups import FiniteGroup, GMultiset, GroupError, dihedral_group, is_conjugate_closed


class CharacterTableError(ArithmeticError):
    pass


@dataclass(frozen=True, eq=False)
class Character:
    """An irreducible character, stored as one value per conjugacy class."""

    group: FiniteGroup
    values: tuple[CycNum, ...]
    index: int = 0

    @property
    def degree(self) -> int:
        d = self.values[0].is_rational()
        return int(d)

    @property
    def m(self) -> int:
        return self.values[0].m

    def __call__(self, element) -> CycNum:
        x = self.group.index(element) if not isinstance(element, (int, np.integer)) else int(element)
        return self.values[self.group.conjugacy.class_of[x]]

    def on_multiset(self, X: GMultiset) -> CycNum:
        return char_on_multiset(self, X)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def is_real(self) -> bool:
        return all(v.conjugate() == v for v in self.values)

    def __eq__(self, other):
        return isinstance(other, Character) and other.group is self.group and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"chi{self.index + 1}(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass
class CharacterTable:
    group: FiniteGroup
    m: int
    characters: list[Character]
    method: str = ""
    prime: int | None = None
    notes: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, i) -> Character:
        return self.characters[i]

    @property
    def degrees(self) -> list[int]:
        return [c.degree for c in self.characters]

    def matrix(self) -> list[list[CycNum]]:
        return [list(c.values) for c in self.characters]

    def numeric(self) -> np.ndarray:
        return np.array([[complex(v) for v in c.values] for c in self.characters])


def char_on_multiset(chi: Character, X: GMultiset) -> CycNum:
    """chi(X) = sum over x in X (with multiplicity) of chi(x)."""
    if X.group is not chi.group:
        raise ValueError("multiset and character belong to different groups")
    if not is_conjugate_closed(X):
        raise ValueError(f"multiset {X!r} is not a union of conjugacy classes")
    counts = X.class_counts()
    total = CycNum.zero(chi.m)
    for k, c in enumerate(counts):
        if c:
            total = total + chi.values[k] * int(c)
    return total


# ---------------------------------------------------------------------------
# closed forms


def _finalize(G: FiniteGroup, m: int, rows: list[list[CycNum]], method: str, prime=None) -> CharacterTable:
    rows = canonical_order(rows)
    chars = [Character(G, tuple(r), i) for i, r in enumerate(rows)]
    return CharacterTable(G, m, chars, method=method, prime=prime)


def canonical_order(rows: list[list[CycNum]]) -> list[list[CycNum]]:
    """Degree ascending, trivial character first, then descending coefficient vectors."""

    def key(row):
        deg = row[0].is_rational()
        trivial = all(v == 1 for v in row)
        flat = tuple(-c for v in row for c in v.sort_key())
        return (deg, not trivial, flat)

    return sorted(rows, key=key)


def _greedy_generators(G: FiniteGroup) -> list[int]:
    """Elements of largest order first, each outside the span of the previous ones."""
    order = sorted(range(G.order), key=lambda x: (-int(G.element_orders[x]), x))
    gens: list[int] = []
    span = {0}
    for x in order:
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for y in frontier:
                for g in gens:
                    z = int(G.mul[y, g])
                    if z not in span:
                        span.add(z)
                        nxt.append(z)
            frontier = nxt
        if len(span) == G.order:
            break
    return gens


def char_table_abelian(G: FiniteGroup) -> CharacterTable:
    """All homomorphisms G -> mu_m, found by testing exponent assignments on generators."""
    if not G.is_abelian:
        raise GroupError(f"{G.name} is not abelian")
    m = G.exponent
    n = G.order
    gens = _greedy_generators(G)
    if not gens:
        return _finalize(G, m, [[CycNum.one(m)]], "abelian")
    # word coordinates for every element
    coords = np.full((n, len(gens)), -1, np.int64)
    coords[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for y in frontier:
            for i, g in enumerate(gens):
                z = int(G.mul[y, g])
                if coords[z, 0] < 0:
                    coords[z] = coords[y]
                    coords[z, i] += 1
                    nxt.append(z)
        frontier = nxt
    choices = [range(0, m, m // int(G.element_orders[g])) for g in gens]
    assign = np.array(list(itertools.product(*choices)), np.int64).reshape(-1, len(gens))
    vals = (coords @ assign.T) % m  # (n, candidates)
    ok = np.ones(assign.shape[0], bool)
    for i, g in enumerate(gens):
        shifted = vals[G.mul[:, g]]
        ok &= ((shifted - vals - assign[:, i][None, :]) % m == 0).all(axis=0)
    good = vals[:, ok]
    if good.shape[1] != n:
        raise CharacterTableError(f"found {good.shape[1]} linear characters, expected {n}")
    reps = G.conjugacy.representatives
    rows = [[CycNum.root_of_unity(m, int(good[r, j])) for r in reps] for j in range(n)]
    return _finalize(G, m, rows, "abelian")


def _dihedral_coordinates(G: FiniteGroup, n: int):
    """(s, i) with element = b^s a^i for the built-in dihedral labelling."""
    a = G.index("a") if n > 1 else 0
    b = G.index("b")
    coords = {}
    ap = 0
    for i in range(n):
        coords[ap] = (0, i)
        coords[int(G.mul[b, ap])] = (1, i)
        ap = int(G.mul[ap, a])
    if len(coords) != G.order:
        raise GroupError("group does not have the dihedral labelling")
    return coords


def char_table_dihedral(n) -> CharacterTable:
    """D_{2n} for odd n: two linear characters plus chi_l(a^k) = w^lk + w^-lk, chi_l(ba^k) = 0.

    Accepts n or a built-in dihedral group.
    """
    if isinstance(n, FiniteGroup):
        G = n
        if not G.spec or G.spec.get("kind") != "dihedral":
            raise GroupError("not a built-in dihedral group")
        n = int(G.spec["params"]["n"])
    else:
        n = int(n)
        G = None
    if n < 3 or n % 2 == 0:
        raise GroupError(f"closed-form dihedral table needs odd n >= 3, got {n}")
    if G is None:
        G = dihedral_group(n)
    m = G.exponent
    coords = _dihedral_coordinates(G, n)
    reps = [coords[int(r)] for r in G.conjugacy.representatives]
    step = m // n  # w_n = w_m^step
    one, zero = CycNum.one(m), CycNum.zero(m)
    rows = []
    for sb in (1, -1):
        rows.append([one * (sb ** s) for s, i in reps])
    for l in range(1, (n - 1) // 2 + 1):
        row = []
        for s, i in reps:
            if s:
                row.append(zero)
            else:
                row.append(CycNum.root_of_unity(m, step * l * i) + CycNum.root_of_unity(m, -step * l * i))
        rows.append(row)
    return _finalize(G, m, rows, "dihedral")


# ---------------------------------------------------------------------------
# Dixon


def dixon_prime(G: FiniteGroup) -> int:
    """Smallest prime p = 1 mod exponent with p > 2|G|."""
    m = G.exponent
    p = m * (2 * G.order // m + 1) + 1
    while not isprime(p) or p <= 2 * G.order:
        p += m
    return p


def class_matrices(G: FiniteGroup) -> np.ndarray:
    """M[j][i, k] = a_{j i k}: coefficient of C_k in the class-sum product C_j C_i."""
    cc = G.conjugacy
    a = kernels.structure_constants(G.mul, G.inv, cc.class_of, cc.representatives)
    return np.ascontiguousarray(a)


def _restrict(M, V, p):
    """Matrix X with M V = V X, for V with independent columns."""
    d = V.shape[1]
    aug = np.concatenate([V, (M @ V) % p], axis=1)
    R, piv = kernels.rref_mod_p(aug, p)
    if len(piv) < d or int(piv[d - 1]) != d - 1:
        raise CharacterTableError("subspace is not invariant")
    return R[:d, d:] % p


def _split(spaces, M, p):
    out = []
    for V in spaces:
        d = V.shape[1]
        if d == 1:
            out.append(V)
            continue
        X = _restrict(M, V, p)
        cp = kernels.berkowitz_mod_p(X, p)
        roots = kernels.poly_roots_mod_p(cp, p)
        pieces = []
        for lam in roots:
            N = kernels.nullspace_mod_p((X - int(lam) * np.eye(d, dtype=np.int64)) % p, p)
            if N.shape[1]:
                pieces.append((V @ N) % p)
        if sum(P.shape[1] for P in pieces) != d:
            # eigenvalues outside F_p or not diagonalisable over F_p for this matrix
            out.append(V)
        else:
            out.extend(pieces)
    return out


def char_table_dixon(G: FiniteGroup, seed: int = 0) -> CharacterTable:
    cc = G.conjugacy
    r = len(cc)
    n = G.order
    m = G.exponent
    p = dixon_prime(G)
    A = class_matrices(G) % p
    mats = [A[j] for j in range(r)]
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(1, p, size=r)
    combo = np.zeros((r, r), np.int64)
    for j in range(r):
        combo = (combo + int(coeffs[j]) * mats[j]) % p
    spaces = [np.eye(r, dtype=np.int64)]
    for M in [combo] + mats[1:]:
        spaces = _split(spaces, M, p)
        if all(V.shape[1] == 1 for V in spaces):
            break
    if len(spaces) != r:
        raise CharacterTableError("class matrices did not split into one-dimensional eigenspaces")

    sizes = [int(s) for s in cc.sizes]
    inv_class = [int(cc.class_of[G.inv[int(x)]]) for x in cc.representatives]
    z = primitive_root_of_unity_mod(m, p)
    minv = pow(m, -1, p)
    pt = G.power_table
    # class of rep_k ** j for j in 0..m-1
    pow_class = cc.class_of[pt[np.asarray(cc.representatives)]]
    rows = []
    for V in spaces:
        v = V[:, 0] % p
        if v[0] == 0:
            raise CharacterTableError("eigenvector vanishes on the identity class")
        w = v * pow(int(v[0]), -1, p) % p
        s = 0
        for i in range(r):
            s = (s + int(w[i]) * int(w[inv_class[i]]) * pow(sizes[i], -1, p)) % p
        d2 = n * pow(s, -1, p) % p
        d = next((d for d in range(1, math.isqrt(n) + 1) if d * d % p == d2), None)
        if d is None:
            raise CharacterTableError("no admissible degree")
        chi_p = [d * int(w[i]) * pow(sizes[i], -1, p) % p for i in range(r)]
        row = []
        for k in range(r):
            seq = [chi_p[int(pow_class[k, j])] for j in range(m)]
            mu = []
            for e in range(m):
                acc = sum(seq[j] * pow(z, (-j * e) % m, p) for j in range(m)) % p
                acc = acc * minv % p
                if acc > d:
                    raise CharacterTableError("eigenvalue multiplicity out of range")
                mu.append(acc)
            row.append(CycNum.from_cyclic(m, mu))
        rows.append(row)
    return _finalize(G, m, rows, "dixon", prime=p)


# ---------------------------------------------------------------------------


def character_table(G: FiniteGroup, method: str = "auto") -> CharacterTable:
    """Cached character table of G; ``method`` is auto, abelian, dihedral or dixon."""
    cache = G.__dict__.setdefault("_chartables", {})
    if method in cache:
        return cache[method]
    if method == "auto":
        if G.is_abelian:
            T = char_table_abelian(G)
        elif G.spec and G.spec.get("kind") == "dihedral" and int(G.spec["params"]["n"]) % 2:
            T = char_table_dihedral(G)
        else:
            T = char_table_dixon(G)
    elif method == "abelian":
        T = char_table_abelian(G)
    elif method == "dihedral":
        T = char_table_dihedral(G)
    elif method == "dixon":
        T = char_table_dixon(G)
    else:
        raise ValueError(f"unknown method {method!r}")
    cache[method] = T
    return T


def check_orthogonality(T: CharacterTable) -> list[str]:
    """Exact row and column orthogonality plus the degree sum; returns a list of failures."""
    G = T.group
    n = G.order
    sizes = [int(s) for s in G.conjugacy.sizes]
    r = len(sizes)
    problems = []
    if len(T) != r:
        problems.append(f"{len(T)} characters for {r} classes")
    if sum(d * d for d in T.degrees) != n:
        problems.append("sum of squared degrees differs from the group order")
    conj = [[v.conjugate() for v in c.values] for c in T]
    for i, ci in enumerate(T):
        for j in range(i, len(T)):
            s = CycNum.zero(T.m)
            for k in range(r):
                s = s + ci.values[k] * conj[j][k] * sizes[k]
            expect = n if i == j else 0
            if s != expect:
                problems.append(f"rows {i},{j}: inner product {s}, expected {expect}")
    for k in range(r):
        for l in range(k, r):
            s = CycNum.zero(T.m)
            for i, c in enumerate(T):
                s = s + c.values[k] * conj[i][l]
            expect = n // sizes[k] if k == l else 0
            if s != expect:
                problems.append(f"columns {k},{l}: sum {s}, expected {expect}")
    return problems
