"""Splitting field and algebraic degree of a quasi-abelian semi-Cayley digraph.

With m the group exponent, T is the subgroup of units t mod m for which the
t-th powers of I1, I2 minus I3 and I3 minus I2 are unchanged. K is the fixed
field of T inside Q(w_m). M is the subgroup of K^x / K^x2 generated by the
nonzero radicands. Then

    deg = phi(m) * |M| / |T|,

and the digraph is integral exactly when T is all of Z_m^* and M is trivial.
K is only ever handled through the fixed-point test under T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chartable import CharacterTable, char_on_multiset, character_table
from .cyclotomic import (
    DEFAULT_HEIGHT_CAP,
    DEFAULT_PROBABILISTIC_PRIMES,
    CycNum,
    SqrtResult,
    _embeddings_at,
    format_cycnum,
    split_primes,
    sqrt_in_cyclotomic,
)
from .digraph import IMultisets, RadicalEigenvalue, SemiCayleyDigraph, eigenvalues, i_multisets
from .groups import (
    FiniteGroup, GMultiset, GroupError, euler_phi, is_conjugate_closed, mset_power, mset_product, units_mod,
)


class UndeterminedError(ArithmeticError):
    """Squareness of a radicand could not be decided within the height cap."""

    def __init__(self, radicand: CycNum, result: SqrtResult):
        conf = result.confidence
        msg = f"could not decide whether {format_cycnum(radicand)} is a square"
        if conf is not None:
            msg += f" (square residues at all {result.primes_checked} split primes; confidence {conf:.6g})"
        super().__init__(msg)
        self.radicand = radicand
        self.result = result


@dataclass(frozen=True)
class SquareOptions:
    probabilistic_primes: int = DEFAULT_PROBABILISTIC_PRIMES
    height_cap: int = DEFAULT_HEIGHT_CAP


DEFAULT_OPTIONS = SquareOptions()


# ---------------------------------------------------------------------------
# T and K


@dataclass(frozen=True)
class TSubgroup:
    m: int
    elements: tuple[int, ...]

    def __post_init__(self):
        els = set(self.elements)
        if 1 not in els:
            raise ValueError("T must contain 1")
        if self.m > 1:
            for a in els:
                for b in els:
                    if (a * b) % self.m not in els:
                        raise ValueError(f"T is not closed: {a}*{b}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def is_full(self) -> bool:
        return len(self.elements) == euler_phi(self.m)

    @property
    def fixed_field_degree(self) -> int:
        """[K : Q]."""
        return euler_phi(self.m) // len(self.elements)


def _power_invariant(X: GMultiset, t: int) -> bool:
    return not X or mset_power(X, t) == X


def compute_T(I: IMultisets, m: int) -> TSubgroup:
    sets = (I.I1, I.I2_minus_I3, I.I3_minus_I2)
    for X in sets:
        if not is_conjugate_closed(X):
            raise ValueError("I-multisets must be conjugate-closed")
    units = units_mod(m)
    elems = tuple(t for t in units if all(_power_invariant(X, t) for X in sets))
    return TSubgroup(m, elems)


def in_fixed_field(x: CycNum, T: TSubgroup) -> bool:
    if x.m != T.m:
        raise ValueError("modulus mismatch")
    return all(x.galois(t) == x for t in T if t != 1)


def describe_K(T: TSubgroup) -> str:
    if T.is_full:
        return "Q"
    if len(T) == 1:
        return f"Q(w{T.m})"
    return f"fixed field of T={{{', '.join(map(str, T.elements))}}} in Q(w{T.m})"


# ---------------------------------------------------------------------------
# squares in K


@dataclass
class SquareVerdict:
    status: str  # square | nonsquare | zero | undetermined
    witness: CycNum | None = None
    certificate: dict | None = None
    confidence: float | None = None
    sqrt_result: SqrtResult | None = None

    @property
    def is_square(self) -> bool:
        return self.status in ("square", "zero")


def is_square_in_K(a: CycNum, T: TSubgroup, options: SquareOptions = DEFAULT_OPTIONS) -> SquareVerdict:
    """Squareness in K via a root in Q(w_m) and the fixed-point test on that root."""
    res = sqrt_in_cyclotomic(a, options.probabilistic_primes, options.height_cap)
    if res.status == "zero":
        return SquareVerdict("zero", witness=res.root, sqrt_result=res)
    if res.status == "nonsquare":
        return SquareVerdict("nonsquare", certificate=res.certificate, sqrt_result=res)
    if res.status == "undetermined":
        return SquareVerdict("undetermined", confidence=res.confidence, sqrt_result=res)
    y = res.root
    moved = next((t for t in T if y.galois(t) != y), None)
    if moved is None:
        return SquareVerdict("square", witness=y, sqrt_result=res)
    # the only square roots are +-y, and sigma_t sends y to -y
    return SquareVerdict("nonsquare", certificate={"kind": "root-outside-K", "t": moved,
                                                   "root": format_cycnum(y)}, sqrt_result=res)


@dataclass
class SquareClassGroup:
    basis: list[CycNum]
    T: TSubgroup
    verdicts: list[tuple[str, str]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return 2 ** len(self.basis)


def _split_columns(values: list[CycNum], m: int, count: int) -> list[int]:
    """Quadratic-character bits of each value at ``count`` split-prime embeddings.

    Row i is an int whose bit j is set when values[i] is a non-residue at the
    j-th usable embedding; embeddings where some value vanishes are skipped.
    """
    rows = [0] * len(values)
    col = 0
    for p in split_primes(m):
        for e in _embeddings_at(m, p):
            if any(v.den % p == 0 for v in values):
                break
            res = [v.residue(e) for v in values]
            if not all(res):
                continue
            half = (p - 1) // 2
            for i, r in enumerate(res):
                if pow(r, half, p) != 1:
                    rows[i] |= 1 << col
            col += 1
            if col >= count:
                return rows
    return rows  # pragma: no cover (split_primes is infinite)


def _xor_kernel(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduce rows in order over F_2; returns (kernel combinations, pivot rows' indices).

    A kernel combination is a bitmask over row indices whose rows XOR to zero.
    """
    pivots: dict[int, tuple[int, int]] = {}  # leading bit -> (row, combination)
    kernel, independent = [], []
    for i, row in enumerate(rows):
        combo = 1 << i
        while row:
            lead = row.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = (row, combo)
                independent.append(i)
                break
            prow, pcombo = pivots[lead]
            row ^= prow
            combo ^= pcombo
        else:
            kernel.append(combo)
    return kernel, independent


def _product(values: list[CycNum], combo: int) -> CycNum:
    out = CycNum.one(values[0].m)
    for i, v in enumerate(values):
        if combo >> i & 1:
            out = out * v
    return out


def square_class_group(radicands, T: TSubgroup, options: SquareOptions = DEFAULT_OPTIONS,
                       max_rounds: int = 8) -> SquareClassGroup:
    """Basis of the subgroup of K^x/K^x2 generated by the nonzero radicands.

    With L = Q(w_m), a product of radicands is a square in K iff it is a
    square in L and its root y satisfies sigma_t(y) = y for every t in T.
    Quadratic characters at split primes of L give a certified lower bound
    on the rank in L^x/L^x2; every kernel vector is confirmed by an explicit
    root, and the signs sigma_t(y)/y then cut the kernel down to K-squares.
    Earlier radicands are preferred when choosing the basis.
    """
    m = T.m
    log: list[tuple[str, str]] = []
    values: list[CycNum] = []
    for a in radicands:
        if a.is_zero():
            log.append((format_cycnum(a), "zero"))
        elif a in values:
            log.append((format_cycnum(a), "duplicate"))
        else:
            if not in_fixed_field(a, T):
                raise ValueError(f"radicand {format_cycnum(a)} does not lie in K")
            values.append(a)
            log.append((format_cycnum(a), "pending"))
    n = len(values)
    signs: list[int] = []
    kernel: list[int] = []
    count = 2 * n + 32
    for _ in range(max_rounds):
        kernel, _independent = _xor_kernel(_split_columns(values, m, count)) if n else ([], [])
        signs = []
        for combo in kernel:
            P = _product(values, combo)
            res = sqrt_in_cyclotomic(P, options.probabilistic_primes, options.height_cap)
            if res.status == "undetermined":
                raise UndeterminedError(P, res)
            if res.status != "square":
                break  # the columns missed a non-square: take more primes
            y = res.root
            bits = 0
            for j, t in enumerate(T):
                image = y.galois(t)
                if image == -y:
                    bits |= 1 << j
                elif image != y:
                    raise ArithmeticError(f"sigma_{t} does not fix {format_cycnum(P)}")
            signs.append(bits)
        else:
            break
        count *= 2
    else:
        raise UndeterminedError(P, res)
    # combinations of kernel vectors with trivial signs are the K-squares
    k_squares = []
    for combo in _xor_kernel(signs)[0]:
        c = 0
        for j, kc in enumerate(kernel):
            if combo >> j & 1:
                c ^= kc
        k_squares.append(c)
    # echelon form with highest-index pivots; the remaining indices form a basis
    pivots: dict[int, int] = {}
    for c in k_squares:
        while c:
            lead = c.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = c
                break
            c ^= pivots[lead]
    basis = [v for i, v in enumerate(values) if i not in pivots]
    chosen = {format_cycnum(v) for v in basis}
    log = [(s, ("new" if s in chosen else "dependent") if kind == "pending" else kind) for s, kind in log]
    return SquareClassGroup(basis, T, log)


# ---------------------------------------------------------------------------
# reports


@dataclass
class DegreeReport:
    m: int
    phi: int
    T: TSubgroup
    K_degree: int
    K_description: str
    basis: list[CycNum]
    eigenvalues: list[RadicalEigenvalue]
    deg: int
    integral: bool
    confidence: str = "exact"
    kind: str = "semi-cayley"
    cayley_values: list[tuple[int, CycNum, int]] | None = None

    @property
    def M_order(self) -> int:
        return 2 ** len(self.basis)

    @property
    def sf_description(self) -> str:
        if not self.basis:
            return self.K_description
        rads = ", ".join(f"sqrt({format_cycnum(b)})" for b in self.basis)
        if self.K_description == "Q":
            return f"Q({rads})"
        return f"K({rads}), K = {self.K_description}"


def _report(m, T, basis, evs, kind="semi-cayley") -> DegreeReport:
    phi = euler_phi(m)
    deg = phi * 2 ** len(basis) // len(T)
    assert (phi * 2 ** len(basis)) % len(T) == 0
    return DegreeReport(m=m, phi=phi, T=T, K_degree=T.fixed_field_degree, K_description=describe_K(T),
                        basis=basis, eigenvalues=evs, deg=deg, integral=(deg == 1), kind=kind)


def algebraic_degree(graph: SemiCayleyDigraph, tbl: CharacterTable | None = None,
                     options: SquareOptions = DEFAULT_OPTIONS) -> DegreeReport:
    G = graph.group
    tbl = tbl or character_table(G)
    m = G.exponent
    I = i_multisets(graph)
    T = compute_T(I, m)
    evs = eigenvalues(graph, tbl)
    for e in evs:
        # T fixes every chi(I1) and every radicand; a failure here is a bug
        assert in_fixed_field(e.trace_part, T) and in_fixed_field(e.radicand, T)
    M = square_class_group([e.radicand for e in evs], T, options)
    return _report(m, T, M.basis, evs)


def is_integral(graph: SemiCayleyDigraph, tbl: CharacterTable | None = None,
                options: SquareOptions = DEFAULT_OPTIONS) -> bool:
    return algebraic_degree(graph, tbl, options).integral


def _require_closed(S: GMultiset):
    if not is_conjugate_closed(S):
        raise ValueError(f"{S!r} is not a union of conjugacy classes")


def degree_cayley(G: FiniteGroup, S, tbl: CharacterTable | None = None) -> DegreeReport:
    """Cay(G, S): T from S alone, no radicals, SF = K."""
    S = S if isinstance(S, GMultiset) else GMultiset.from_elements(G, S)
    _require_closed(S)
    tbl = tbl or character_table(G)
    m = G.exponent
    T = TSubgroup(m, tuple(t for t in units_mod(m) if _power_invariant(S, t)))
    rep = _report(m, T, [], [], kind="cayley")
    # (character index, eigenvalue chi(S)/d, multiplicity d^2)
    rep.cayley_values = [(k, char_on_multiset(chi, S) * Fraction(1, chi.degree), chi.degree ** 2)
                         for k, chi in enumerate(tbl)]
    return rep


def bcay_digraph(G: FiniteGroup, S) -> SemiCayleyDigraph:
    S = S if isinstance(S, GMultiset) else GMultiset.from_elements(G, S)
    _require_closed(S)
    return SemiCayleyDigraph(G, None, None, S, S.inverse())


def degree_bcay(G: FiniteGroup, S, tbl: CharacterTable | None = None,
                options: SquareOptions = DEFAULT_OPTIONS) -> DegreeReport:
    """Bi-Cayley BCay(G, S) = SC(G, {}, {}, S, S^-1) without building the I-multisets.

    T comes from SS^-1 alone and M from the classes of |chi(S)|^2.
    ``cayley_values`` holds (character index, squared eigenvalue |chi(S)|^2 / d^2, multiplicity 2 d^2).
    """
    S = S if isinstance(S, GMultiset) else GMultiset.from_elements(G, S)
    _require_closed(S)
    tbl = tbl or character_table(G)
    m = G.exponent
    SS = mset_product(S, S.inverse())
    T = TSubgroup(m, tuple(t for t in units_mod(m) if _power_invariant(SS, t)))
    values = [char_on_multiset(chi, S) for chi in tbl]
    radicands = [v * v.conjugate() for v in values]
    M = square_class_group(radicands, T, options)
    rep = _report(m, T, M.basis, [], kind="bi-cayley")
    rep.cayley_values = [(k, r * Fraction(1, chi.degree ** 2), 2 * chi.degree ** 2)
                         for k, (chi, r) in enumerate(zip(tbl, radicands))]
    return rep


def abelian_consistency(graph: SemiCayleyDigraph) -> bool:
    """For abelian G of order n: phi(m)/|T| equals phi(n)/|H|, H the analogue of T over Z_n^*."""
    G = graph.group
    if not G.is_abelian:
        raise GroupError("abelian group required")
    n, m = G.order, G.exponent
    I = i_multisets(graph)
    T = compute_T(I, m)
    sets = (I.I1, I.I2_minus_I3, I.I3_minus_I2)
    H = [h for h in units_mod(n) if all(_power_invariant(X, h) for X in sets)]
    return euler_phi(m) * len(H) == euler_phi(n) * len(T)

