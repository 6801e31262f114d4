"""Semi-Cayley digraphs SC(G, T11, T22, T12, T21) and their radical eigenvalues."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chartable import Character, CharacterTable, char_on_multiset, character_table
from .cyclotomic import CycNum
from .groups import FiniteGroup, GMultiset, mset_diff, mset_product, split_class_witness

SET_NAMES = ("T11", "T22", "T12", "T21")


class QuasiAbelianError(ValueError):
    """A connection set is not a union of conjugacy classes."""

    def __init__(self, set_name: str, witness: int, label: str):
        super().__init__(f"{set_name} is not a union of conjugacy classes: "
                         f"it splits the class of {label}")
        self.set_name = set_name
        self.witness = witness
        self.label = label


def _as_set(G: FiniteGroup, X, name: str) -> GMultiset:
    if X is None:
        return GMultiset.empty(G)
    if not isinstance(X, GMultiset):
        X = GMultiset.from_elements(G, X)
    if X.group is not G:
        raise ValueError(f"{name} belongs to a different group")
    if not X.is_set():
        raise ValueError(f"{name} must be a set (multiplicities 0 or 1)")
    return X


class SemiCayleyDigraph:
    """Vertices G x {1, 2}; arc (h, i) -> (g, j) iff g h^-1 lies in T_ij.

    Construction validates that all four sets are conjugate-closed unless
    ``validate=False`` (the adjacency matrix is defined either way).
    """

    def __init__(self, group: FiniteGroup, T11=None, T22=None, T12=None, T21=None,
                 validate: bool = True):
        self.group = group
        self.T11 = _as_set(group, T11, "T11")
        self.T22 = _as_set(group, T22, "T22")
        self.T12 = _as_set(group, T12, "T12")
        self.T21 = _as_set(group, T21, "T21")
        if validate:
            validate_quasi_abelian(self)

    @property
    def sets(self) -> dict[str, GMultiset]:
        return {"T11": self.T11, "T22": self.T22, "T12": self.T12, "T21": self.T21}

    @property
    def num_vertices(self) -> int:
        return 2 * self.group.order

    def class_composition(self) -> dict[str, list[int]]:
        """Class indices making up each connection set."""
        out = {}
        sizes = self.group.conjugacy.sizes
        for name, X in self.sets.items():
            cc = X.class_counts()
            out[name] = [int(k) for k in np.flatnonzero(cc) if cc[k] == sizes[k]]
        return out

    def __repr__(self):
        parts = ", ".join(f"{k}={v!r}" for k, v in self.sets.items())
        return f"SC({self.group.name}; {parts})"


def validate_quasi_abelian(graph: SemiCayleyDigraph) -> SemiCayleyDigraph:
    for name, X in graph.sets.items():
        w = split_class_witness(X)
        if w is not None:
            raise QuasiAbelianError(name, w, graph.group.labels[w])
    return graph


def is_quasi_abelian(graph: SemiCayleyDigraph) -> bool:
    return all(split_class_witness(X) is None for X in graph.sets.values())


@dataclass(frozen=True)
class IMultisets:
    I1: GMultiset
    I2: GMultiset
    I3: GMultiset

    @property
    def I2_minus_I3(self) -> GMultiset:
        return mset_diff(self.I2, self.I3)

    @property
    def I3_minus_I2(self) -> GMultiset:
        return mset_diff(self.I3, self.I2)


def i_multisets(graph: SemiCayleyDigraph) -> IMultisets:
    T11, T22, T12, T21 = graph.T11, graph.T22, graph.T12, graph.T21
    I1 = T11.union(T22)
    I2 = mset_product(T11, T11).union(mset_product(T22, T22)).union(mset_product(T12, T21).scale(4))
    I3 = mset_product(T11, T22).scale(2)
    return IMultisets(I1, I2, I3)


@dataclass(frozen=True)
class RadicalEigenvalue:
    """The pair (A +- sqrt(r)) / (2d) attached to one irreducible character.

    Each sign carries multiplicity d^2; when r = 0 the pair collapses to a
    single eigenvalue of multiplicity 2d^2.
    """

    char_index: int
    trace_part: CycNum
    radicand: CycNum
    degree: int

    @property
    def multiplicity(self) -> int:
        return self.degree ** 2

    @property
    def collapsed(self) -> bool:
        return self.radicand.is_zero()

    @property
    def pair_sum(self) -> CycNum:
        return self.trace_part * Fraction(1, self.degree)

    @property
    def pair_product(self) -> CycNum:
        A, r, d = self.trace_part, self.radicand, self.degree
        return (A * A - r) * Fraction(1, 4 * d * d)

    def quadratic_factor(self) -> list[CycNum]:
        """[1, -(sum), product]: the monic quadratic whose roots are the pair."""
        return [CycNum.one(self.trace_part.m), -self.pair_sum, self.pair_product]

    def numeric_pair(self) -> tuple[complex, complex]:
        """(plus, minus) under the principal embedding; plus has Im >= 0, then larger Re."""
        A = complex(self.trace_part)
        s = cmath.sqrt(complex(self.radicand))
        d2 = 2 * self.degree
        u, v = (A + s) / d2, (A - s) / d2
        if (round(v.imag, 12), round(v.real, 12)) > (round(u.imag, 12), round(u.real, 12)):
            u, v = v, u
        return u, v

    def numeric_values(self) -> list[complex]:
        """All 2d^2 eigenvalues (with multiplicity) as complex numbers."""
        u, v = self.numeric_pair()
        return [u] * self.multiplicity + [v] * self.multiplicity

    def exact_rational_values(self) -> tuple[Fraction, Fraction] | None:
        """Both eigenvalues as rationals when the pair is rational."""
        from .cyclotomic import sqrt_in_cyclotomic

        A = self.trace_part.is_rational()
        r = self.radicand.is_rational()
        if A is None or r is None:
            return None
        if r == 0:
            v = A / (2 * self.degree)
            return v, v
        res = sqrt_in_cyclotomic(CycNum.rational(1, r))
        if res.status != "square":
            return None
        s = res.root.is_rational()
        return (A + s) / (2 * self.degree), (A - s) / (2 * self.degree)


def _values(chi: Character, X: GMultiset) -> CycNum:
    return char_on_multiset(chi, X)


def eigenvalues(graph: SemiCayleyDigraph, tbl: CharacterTable | None = None) -> list[RadicalEigenvalue]:
    tbl = tbl or character_table(graph.group)
    I = i_multisets(graph)
    d23, d32 = I.I2_minus_I3, I.I3_minus_I2
    out = []
    for k, chi in enumerate(tbl):
        d = chi.degree
        A = _values(chi, I.I1)
        r = (_values(chi, d23) - _values(chi, d32)) * d
        out.append(RadicalEigenvalue(k, A, r, d))
    return out


def adjacency_matrix(graph: SemiCayleyDigraph) -> np.ndarray:
    G = graph.group
    n = G.order
    # D[h, g] = g h^-1
    D = G.mul[:, G.inv].T
    A = np.zeros((2 * n, 2 * n), np.int64)
    blocks = {(0, 0): graph.T11, (1, 1): graph.T22, (0, 1): graph.T12, (1, 0): graph.T21}
    for (i, j), X in blocks.items():
        member = (X.counts > 0).astype(np.int64)
        A[i * n:(i + 1) * n, j * n:(j + 1) * n] = member[D]
    return A


def is_undirected(graph: SemiCayleyDigraph) -> bool:
    return (graph.T11.inverse() == graph.T11 and graph.T22.inverse() == graph.T22
            and graph.T12.inverse() == graph.T21)


def spectral_trace(evs: list[RadicalEigenvalue]) -> CycNum:
    """sum d^2 (lambda+ + lambda-) = sum d * A."""
    total = CycNum.zero(evs[0].trace_part.m)
    for e in evs:
        total = total + e.trace_part * e.degree
    return total
