"""Brute-force checks that do not go through character theory.

The characteristic polynomial of the adjacency matrix is computed exactly
(multi-modular Berkowitz with CRT, plus two slower independent routes), and
compared with the product of the per-character quadratics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import isprime

from . import kernels
from .chartable import CharacterTable, char_on_multiset, character_table
from .cyclotomic import CycNum
from .digraph import RadicalEigenvalue, SemiCayleyDigraph, adjacency_matrix, eigenvalues

# ---------------------------------------------------------------------------
# characteristic polynomials (ascending integer coefficients)


_PRIMES: list[int] = []


def _prime(i: int) -> int:
    """The i-th largest prime below the kernel limit."""
    p = _PRIMES[-1] - 2 if _PRIMES else kernels.MAX_KERNEL_PRIME - 1
    while len(_PRIMES) <= i:
        if isprime(p):
            _PRIMES.append(p)
        p -= 2
    return _PRIMES[i]


def coefficient_bound(A) -> int:
    """Bound on |c_k| for det(xI - A): binom(n, k) times the product of the k largest row norms."""
    A = np.asarray(A)
    n = A.shape[0]
    norms = sorted((math.sqrt(float(np.dot(r.astype(float), r.astype(float)))) for r in A), reverse=True)
    best = 1.0
    prod = 1.0
    for k in range(1, n + 1):
        prod *= max(norms[k - 1], 1.0)
        best = max(best, math.comb(n, k) * prod)
    return int(best) + 1


def berkowitz_charpoly(A) -> list[int]:
    """det(xI - A), lowest degree first, via Berkowitz mod several primes and CRT."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    if n == 0:
        return [1]
    bound = coefficient_bound(A)
    modulus = 1
    result = [0] * (n + 1)
    i = 0
    while modulus <= 2 * bound:
        p = _prime(i)
        i += 1
        cp = [int(c) for c in kernels.berkowitz_mod_p(A, p)][::-1]
        if modulus == 1:
            result = cp
        else:
            inv = pow(modulus, -1, p)
            result = [r + modulus * (((c - r) * inv) % p) for r, c in zip(result, cp)]
        modulus *= p
    half = modulus // 2
    return [r - modulus if r > half else r for r in result]


def berkowitz_exact(A) -> list[int]:
    """Pure-Python integer Berkowitz (no modular arithmetic), lowest degree first."""
    A = [[int(v) for v in row] for row in np.asarray(A)]
    n = len(A)
    if n == 0:
        return [1]
    vec = [1, -A[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        s = n - k
        R = A[k][k + 1:]
        v = [A[k + 1 + j][k] for j in range(s - 1)]
        t = [1, -A[k][k]]
        for i in range(s - 1):
            t.append(-sum(a * b for a, b in zip(R, v)))
            if i < s - 2:
                v = [sum(A[k + 1 + r][k + 1 + j] * v[j] for j in range(s - 1)) for r in range(s - 1)]
        new = [0] * (s + 1)
        for a, ta in enumerate(t):
            for b, vb in enumerate(vec):
                if a + b <= s:
                    new[a + b] += ta * vb
        vec = new
    return vec[::-1]


def bareiss_det(M) -> int:
    """Fraction-free Gaussian elimination determinant of an integer matrix."""
    M = [[int(v) for v in row] for row in M]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly_by_interpolation(A) -> list[int]:
    """det(xI - A) from Bareiss determinants at x = 0..2n and Lagrange interpolation.

    The extra points beyond n + 1 must agree with the interpolant; a
    disagreement raises ArithmeticError.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    xs = list(range(2 * n + 1))
    ys = [bareiss_det((x * np.eye(n, dtype=np.int64) - A).tolist()) for x in xs]
    pts = xs[: n + 1]
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(pts):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t in range(n + 1):
            coeffs[t] += Fraction(ys[i], denom) * basis[t]
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("interpolated characteristic polynomial is not integral")
    out = [int(c) for c in coeffs]
    for x, y in zip(xs[n + 1:], ys[n + 1:]):
        if poly_eval(out, x) != y:
            raise ArithmeticError(f"interpolant disagrees with the determinant at x={x}")
    return out


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# spectrum identity


def _poly_mul(a: list[CycNum], b: list[CycNum]) -> list[CycNum]:
    m = a[0].m
    out = [CycNum.zero(m) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def quadratic_product(evs: list[RadicalEigenvalue]) -> list[CycNum]:
    """Product over characters of (x^2 - (A/d) x + (A^2 - r)/(4 d^2))^(d^2), lowest degree first."""
    m = evs[0].trace_part.m
    acc = [CycNum.one(m)]
    for e in evs:
        one, b, c = e.quadratic_factor()
        q = [c, b, one]
        for _ in range(e.multiplicity):
            acc = _poly_mul(acc, q)
    return acc


@dataclass
class IdentityReport:
    ok: bool
    expected: list[int]
    predicted: list[str]
    first_mismatch: int | None = None
    nonrational: int | None = None

    def message(self) -> str:
        if self.ok:
            return "characteristic polynomial matches the character-theoretic product"
        if self.nonrational is not None:
            return f"coefficient of x^{self.nonrational} is not rational: {self.predicted[self.nonrational]}"
        i = self.first_mismatch
        return f"coefficient of x^{i}: product gives {self.predicted[i]}, Berkowitz gives {self.expected[i]}"


def spectrum_identity_check(graph: SemiCayleyDigraph, tbl: CharacterTable | None = None,
                            evs: list[RadicalEigenvalue] | None = None) -> IdentityReport:
    tbl = tbl or character_table(graph.group)
    evs = evs if evs is not None else eigenvalues(graph, tbl)
    prod = quadratic_product(evs)
    cp = berkowitz_charpoly(adjacency_matrix(graph))
    shown = [str(c) for c in prod]
    for i, c in enumerate(prod):
        if c.is_rational() is None:
            return IdentityReport(False, cp, shown, nonrational=i)
    if len(prod) != len(cp):
        return IdentityReport(False, cp, shown, first_mismatch=min(len(prod), len(cp)) - 1)
    for i, (c, e) in enumerate(zip(prod, cp)):
        if c.is_rational() != e:
            return IdentityReport(False, cp, shown, first_mismatch=i)
    return IdentityReport(True, cp, shown)


# ---------------------------------------------------------------------------
# integrality by root extraction


def integer_roots(coeffs: list[int], bound: int | None = None) -> tuple[list[int], list[int]]:
    """Peel off integer roots with multiplicity; returns (roots, remaining cofactor).

    Candidates are divisors of the constant term, restricted to |r| <= bound
    when a bound is given.
    """
    poly = list(coeffs)
    roots: list[int] = []
    while len(poly) > 1 and poly[0] == 0:
        roots.append(0)
        poly = poly[1:]
    if bound is None:
        bound = abs(poly[0])
    cands = [d for d in range(1, bound + 1) if poly[0] % d == 0]
    cands = [s * d for d in cands for s in (1, -1)]
    progress = True
    while len(poly) > 1 and progress:
        progress = False
        for r in cands:
            if poly[0] % r:
                continue
            # synthetic division by (x - r), coefficients ascending
            n = len(poly) - 1
            q = [0] * n
            q[n - 1] = poly[n]
            for k in range(n - 1, 0, -1):
                q[k - 1] = poly[k] + r * q[k]
            if poly[0] + r * q[0] == 0:
                roots.append(r)
                poly = q
                progress = True
                break
    return roots, poly


def integrality_bruteforce(graph_or_matrix) -> bool:
    """True iff det(xI - A) is a product of integer linear factors."""
    A = adjacency_matrix(graph_or_matrix) if isinstance(graph_or_matrix, SemiCayleyDigraph) \
        else np.asarray(graph_or_matrix, dtype=np.int64)
    cp = berkowitz_charpoly(A)
    # every eigenvalue is bounded by the largest absolute row sum
    bound = int(np.abs(A).sum(axis=1).max()) if A.size else 0
    _, rest = integer_roots(cp, bound)
    return len(rest) == 1


# ---------------------------------------------------------------------------
# numeric spectrum


@dataclass
class NumericReport:
    ok: bool
    worst_distance: float
    worst_discriminant: float
    tol: float
    high_precision: bool = False
    details: dict = field(default_factory=dict)

    def message(self) -> str:
        state = "within" if self.ok else "outside"
        return (f"numeric spectrum {state} tolerance {self.tol:g}: worst pairing {self.worst_distance:.3e}, "
                f"worst discriminant gap {self.worst_discriminant:.3e}")


def greedy_match(predicted, observed) -> float:
    """Worst distance of a greedy matching: predicted values in lexicographic order, each to its nearest free partner."""
    pred = sorted(predicted, key=lambda z: (z.real, z.imag))
    free = list(observed)
    worst = 0.0
    for z in pred:
        j = min(range(len(free)), key=lambda k: abs(free[k] - z))
        worst = max(worst, abs(free[j] - z))
        free.pop(j)
    return worst


def _sqf_eigenvalues(A, dps: int) -> list[complex]:
    """Eigenvalues with multiplicity from the squarefree factors of the exact charpoly.

    Roots of a squarefree factor are well conditioned, so this stays accurate
    for defective matrices where an eigen-solver only reaches eps^(1/k).
    """
    import mpmath
    import sympy

    x = sympy.Symbol("x")
    cp = berkowitz_charpoly(A)
    _, factors = sympy.Poly(cp[::-1], x).sqf_list()
    out = []
    with mpmath.workdps(dps):
        for f, mult in factors:
            coeffs = [int(c) for c in f.all_coeffs()]
            roots = [mpmath.mpf(-coeffs[1]) / coeffs[0]] if len(coeffs) == 2 else \
                mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
            out += [complex(z) for z in roots] * mult
    return out


def numeric_spectrum_check(graph: SemiCayleyDigraph, tbl: CharacterTable | None = None,
                           tol: float = 1e-9, evs: list[RadicalEigenvalue] | None = None,
                           dps: int = 40) -> NumericReport:
    """Numeric eigenvalues of the adjacency matrix against the predicted multiset.

    Defective matrices (nontrivial Jordan blocks) lose accuracy in double
    precision; when the double-precision match misses the tolerance the
    eigenvalues are recomputed at ``dps`` digits from the squarefree
    factorization of the exact characteristic polynomial.
    Also checks, per character, that (chi(T11) - chi(T22))^2 + 4 chi(T12) chi(T21)
    equals the radicand numerically.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    tbl = tbl or character_table(graph.group)
    evs = evs if evs is not None else eigenvalues(graph, tbl)
    A = adjacency_matrix(graph)
    predicted = [v for e in evs for v in e.numeric_values()]
    observed = list(np.linalg.eigvals(A.astype(float)))
    worst = greedy_match(predicted, observed)
    high = False
    if worst > tol:
        high = True
        worst = greedy_match(predicted, _sqf_eigenvalues(A, dps))
    disc_worst = 0.0
    for e, chi in zip(evs, tbl):
        t11, t22, t12, t21 = (complex(char_on_multiset(chi, X)) for X in
                              (graph.T11, graph.T22, graph.T12, graph.T21))
        disc = (t11 - t22) ** 2 + 4 * t12 * t21
        disc_worst = max(disc_worst, abs(disc - complex(e.radicand)))
    scale = max(1.0, float(np.abs(A).sum(axis=1).max() if A.size else 0) ** 2)
    ok = worst <= tol and disc_worst <= tol * scale
    return NumericReport(ok, worst, disc_worst, tol, high)

