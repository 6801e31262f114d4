"""Exact arithmetic in the cyclotomic field Q(w_m).

Elements are stored over the power basis ``1, w, ..., w^(phi(m)-1)`` reduced
modulo the m-th cyclotomic polynomial, as an integer numerator vector and a
positive common denominator. That form is canonical, so equality and hashing
are coefficientwise.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterator

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_factor_sqf,
    gf_gcdex,
    gf_mul,
    gf_pow_mod,
    gf_quo,
    gf_rem,
)

from .groups import units_mod

DEFAULT_PROBABILISTIC_PRIMES = 64
DEFAULT_HEIGHT_CAP = 4096


# ---------------------------------------------------------------------------
# cyclotomic polynomials and field data


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients, monic divisor)."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        out[i - dn] = c
        if c:
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class CyclotomicField:
    """Static data for Q(w_m): Phi_m and the images of w^k, 0 <= k < m, in the power basis."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.poly = cyclotomic_polynomial(m)
        self.phi = len(self.poly) - 1
        self.units = units_mod(m)
        phi = self.phi
        table = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(m):
            table.append(tuple(cur))
            # multiply by w, reduce x^phi = -sum poly[i] x^i
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.poly)]
        self.powers = tuple(table)
        self.sparse_powers = tuple(tuple((j, c) for j, c in enumerate(row) if c) for row in table)

    def __repr__(self):
        return f"Q(w_{self.m})"

    def reduce_cyclic(self, cyc) -> list[int]:
        """Reduce a vector indexed by exponents mod m to the power basis."""
        phi = self.phi
        out = list(cyc[:phi]) if len(cyc) >= phi else list(cyc) + [0] * (phi - len(cyc))
        sp = self.sparse_powers
        for k in range(phi, len(cyc)):
            c = cyc[k]
            if c:
                for j, v in sp[k]:
                    out[j] += c * v
        return out

    def mul_int(self, x, y) -> list[int]:
        m = self.m
        cyc = [0] * m
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        cyc[(i + j) % m] += a * b
        return self.reduce_cyclic(cyc)

    def galois_int(self, x, t: int) -> list[int]:
        m = self.m
        cyc = [0] * m
        for i, a in enumerate(x):
            if a:
                cyc[(i * t) % m] += a
        return self.reduce_cyclic(cyc)


@lru_cache(maxsize=None)
def field(m: int) -> CyclotomicField:
    return CyclotomicField(m)


# ---------------------------------------------------------------------------
# elements


class CycNum:
    """An element of Q(w_m): ``sum(num[i] * w^i) / den``."""

    __slots__ = ("m", "num", "den", "_hash")

    def __init__(self, m: int, num, den: int = 1, _normalized: bool = False):
        self.m = m
        if _normalized:
            self.num = num
            self.den = den
        else:
            num = [int(c) for c in num]
            phi = field(m).phi
            if len(num) != phi:
                raise ValueError(f"expected {phi} coefficients for m={m}")
            den = int(den)
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                den, num = -den, [-c for c in num]
            g = reduce(math.gcd, num, den)
            if g > 1:
                num = [c // g for c in num]
                den //= g
            self.num = tuple(num)
            self.den = den
        self._hash = None

    # -- constructors -----------------------------------------------------------

    @classmethod
    def rational(cls, m: int, q) -> "CycNum":
        q = Fraction(q)
        phi = field(m).phi
        return cls(m, [q.numerator] + [0] * (phi - 1), q.denominator)

    @classmethod
    def zero(cls, m: int) -> "CycNum":
        return cls.rational(m, 0)

    @classmethod
    def one(cls, m: int) -> "CycNum":
        return cls.rational(m, 1)

    @classmethod
    def root_of_unity(cls, m: int, k: int = 1) -> "CycNum":
        """w_m^k."""
        return cls(m, field(m).powers[k % m])

    @classmethod
    def from_cyclic(cls, m: int, cyc, den: int = 1) -> "CycNum":
        """From coefficients of w^0..w^(m-1) (not necessarily reduced)."""
        return cls(m, field(m).reduce_cyclic([int(c) for c in cyc]), den)

    @classmethod
    def from_fractions(cls, m: int, coeffs) -> "CycNum":
        fr = [Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (f.denominator for f in fr), 1)
        return cls(m, [int(f * den) for f in fr], den)

    # -- inspection ---------------------------------------------------------------

    @property
    def field(self) -> CyclotomicField:
        return field(self.m)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> Fraction | None:
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def __complex__(self):
        m = self.m
        return sum(c * cmath.exp(2j * cmath.pi * i / m) for i, c in enumerate(self.num) if c) / self.den \
            if any(self.num) else 0j

    def to_complex(self) -> complex:
        return complex(self)

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.m == other.m and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            q = self.is_rational()
            return q is not None and q == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycNum({self.m}, {list(self.num)}, {self.den})"

    def __str__(self):
        return format_cycnum(self)

    def sort_key(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.m != self.m:
                raise ValueError(f"modulus mismatch: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(self.m, other)
        raise TypeError(f"cannot combine CycNum with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycNum(self.m, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycNum(self.m, [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
                      self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, tuple(-c for c in self.num), self.den, _normalized=True)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum(self.m, [c * other for c in self.num], self.den)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycNum(self.m, self.field.mul_int(self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(w_m)")
        q = self.is_rational()
        if q is not None:
            return CycNum.rational(self.m, 1 / q)
        s = _poly_inverse_mod([Fraction(c, self.den) for c in self.num], list(self.field.poly))
        return CycNum.from_fractions(self.m, s + [0] * (self.field.phi - len(s)))

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, t: int) -> "CycNum":
        """sigma_t: w -> w^t."""
        if math.gcd(t, self.m) != 1:
            raise ValueError(f"{t} is not a unit mod {self.m}")
        return CycNum(self.m, self.field.galois_int(self.num, t), self.den)

    def conjugate(self) -> "CycNum":
        return self.galois(self.m - 1 if self.m > 1 else 1)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates (always rational)."""
        prod = CycNum.one(self.m)
        for t in self.field.units:
            prod = prod * self.galois(t)
        q = prod.is_rational()
        assert q is not None
        return q

    def lift(self, M: int) -> "CycNum":
        """Image in Q(w_M) for m | M."""
        if M % self.m:
            raise ValueError(f"{self.m} does not divide {M}")
        step = M // self.m
        cyc = [0] * M
        for i, c in enumerate(self.num):
            cyc[(i * step) % M] += c
        return CycNum.from_cyclic(M, cyc, self.den)

    def residue(self, e: "PrimeEmbedding") -> int:
        """Image under w -> z in F_p."""
        if self.m != e.m:
            raise ValueError("modulus mismatch")
        if self.den % e.p == 0:
            raise ZeroDivisionError(f"denominator divisible by {e.p}")
        p = e.p
        acc = 0
        for c in reversed(self.num):
            acc = (acc * e.z + c) % p
        return acc * pow(self.den, -1, p) % p


def galois_apply(s: "GaloisAut", x: CycNum) -> CycNum:
    if s.m != x.m:
        raise ValueError("modulus mismatch")
    return x.galois(s.t)


def cyc_arith(x: CycNum, y: CycNum, kind: str) -> CycNum:
    if x.m != y.m:
        raise ValueError("modulus mismatch")
    ops = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}
    return ops[kind](y)


def is_rational(x: CycNum) -> Fraction | None:
    return x.is_rational()


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cycnum(x: CycNum, symbol: str | None = None) -> str:
    """``a + b*w6 + c*w6^2`` style; rationals print as plain numbers."""
    sym = symbol or f"w{x.m}"
    parts = []
    for i, c in enumerate(x.coefficients()):
        if not c:
            continue
        mono = "" if i == 0 else (sym if i == 1 else f"{sym}^{i}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_fmt_fraction(mag)}*{mono}"
        else:
            body = _fmt_fraction(mag)
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _poly_inverse_mod(a: list[Fraction], mod: list[int]) -> list[Fraction]:
    """Inverse of a modulo an irreducible polynomial, by the extended Euclidean algorithm."""

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(u, v):
        u = list(u)
        q = [Fraction(0)] * max(len(u) - len(v) + 1, 1)
        while len(trim(u)) >= len(v):
            c = u[-1] / v[-1]
            k = len(u) - len(v)
            q[k] = c
            for j, vj in enumerate(v):
                u[k + j] -= c * vj
            u.pop()
        return q, u

    def sub(u, v):
        n = max(len(u), len(v))
        u = u + [Fraction(0)] * (n - len(u))
        v = v + [Fraction(0)] * (n - len(v))
        return trim([x - y for x, y in zip(u, v)])

    def mul(u, v):
        if not u or not v:
            return []
        out = [Fraction(0)] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                out[i + j] += x * y
        return out

    r0, r1 = [Fraction(c) for c in mod], trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, trim(r)
        s0, s1 = s1, sub(s0, mul(q, s1))
    # r1 is a nonzero constant
    c = r1[0]
    _, s = divmod_poly([x / c for x in s1], [Fraction(x) for x in mod])
    return trim(s)


# ---------------------------------------------------------------------------
# Galois automorphisms and prime embeddings


@dataclass(frozen=True)
class GaloisAut:
    m: int
    t: int

    def __post_init__(self):
        if math.gcd(self.t, self.m) != 1:
            raise ValueError(f"{self.t} is not a unit mod {self.m}")

    def __call__(self, x: CycNum) -> CycNum:
        return galois_apply(self, x)

    def compose(self, other: "GaloisAut") -> "GaloisAut":
        return GaloisAut(self.m, (self.t * other.t) % self.m if self.m > 1 else 1)


@dataclass(frozen=True)
class PrimeEmbedding:
    """Ring map Z[w_m] -> F_p sending w to a root z of Phi_m mod p (p = 1 mod m)."""

    m: int
    p: int
    z: int

    def __post_init__(self):
        poly = cyclotomic_polynomial(self.m)
        if self.m % self.p == 0 or sum(c * pow(self.z, i, self.p) for i, c in enumerate(poly)) % self.p:
            raise ValueError(f"{self.z} is not a root of Phi_{self.m} mod {self.p}")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root_of_unity_mod(m: int, p: int) -> int:
    """Smallest-base element of exact order m in F_p^* (requires p = 1 mod m)."""
    if (p - 1) % m:
        raise ValueError(f"{p} is not 1 mod {m}")
    qs = _prime_factors(m)
    for h in range(2, p):
        z = pow(h, (p - 1) // m, p)
        if all(pow(z, m // q, p) != 1 for q in qs):
            return z
    if m == 1:
        return 1
    raise ArithmeticError("no primitive root found")  # pragma: no cover


def split_primes(m: int, start: int = 3) -> Iterator[int]:
    """Odd primes p >= start with p = 1 mod m."""
    step = m if m % 2 == 0 else 2 * m
    if m <= 2:
        step = 2
    p = 1 + step * max(1, -(-(start - 1) // step))
    while True:
        if p >= start and isprime(p):
            yield p
        p += step


@lru_cache(maxsize=4096)
def _embeddings_at(m: int, p: int) -> tuple[PrimeEmbedding, ...]:
    z0 = primitive_root_of_unity_mod(m, p)
    return tuple(PrimeEmbedding(m, p, z) for z in sorted({pow(z0, u, p) for u in units_mod(m)}))


def prime_embeddings(m: int, avoid: int = 1, start: int = 3) -> Iterator[PrimeEmbedding]:
    """All embeddings w -> z for primes p = 1 mod m not dividing ``avoid``, smallest p first."""
    for p in split_primes(m, start):
        if avoid % p == 0:
            continue
        z0 = primitive_root_of_unity_mod(m, p)
        for z in sorted({pow(z0, u, p) for u in units_mod(m)}):
            yield PrimeEmbedding(m, p, z)


# ---------------------------------------------------------------------------
# square roots


@dataclass
class SqrtResult:
    """Outcome of a square-root search in Q(w_m).

    ``status`` is one of ``square``, ``nonsquare``, ``zero``, ``undetermined``.
    A ``nonsquare`` carries a certificate: either a split embedding where the
    residue is a quadratic non-residue, or an irreducible factor f of Phi_m
    mod p where the image in F_p[x]/(f) is a non-square.
    """

    status: str
    root: CycNum | None = None
    certificate: dict | None = None
    primes_checked: int = 0
    confidence: float | None = None

    @property
    def is_square(self) -> bool:
        return self.status in ("square", "zero")


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    a, b = _isqrt_exact(q.numerator), _isqrt_exact(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def rational_reconstruction(c: int, N: int) -> Fraction | None:
    """r/s = c mod N with |r|, s <= sqrt(N/2), if it exists."""
    c %= N
    bound = math.isqrt(N // 2)
    r0, r1 = N, c
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if (r1 - c * s1) % N:
        return None
    return Fraction(r1, s1)


def _normalize_sign(y: CycNum) -> CycNum:
    for c in y.num:
        if c:
            return -y if c < 0 else y
    return y


def _carmichael(m: int) -> int:
    if m <= 2:
        return 1
    return reduce(math.lcm, (_mult_order(u, m) for u in units_mod(m)), 1)


def _mult_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def _gf(poly_asc, p) -> list[int]:
    """Ascending int coefficients -> sympy dense (descending) mod p, trimmed."""
    out = [int(c) % p for c in reversed(poly_asc)]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _from_gf(poly_desc, length) -> list[int]:
    asc = [int(c) for c in reversed(poly_desc)]
    return asc + [0] * (length - len(asc))


def _fq_sqrt(c: list[int], f: list[int], p: int) -> list[int] | None:
    """Square root of c in F_p[x]/(f) by Tonelli-Shanks, None for a non-square."""
    deg = len(f) - 1
    q = p ** deg
    one = [1]
    if gf_pow_mod(c, (q - 1) // 2, f, p, ZZ) != one:
        return None
    Q, s = q - 1, 0
    while Q % 2 == 0:
        Q //= 2
        s += 1
    z = None
    for k in itertools.count(1):
        cand = []
        x = k
        while x:
            cand.append(x % p)
            x //= p
        cand = _gf(cand, p)
        if len(cand) > deg:
            break
        if cand and gf_pow_mod(cand, (q - 1) // 2, f, p, ZZ) != one:
            z = cand
            break
    if z is None:  # pragma: no cover - q = 2 mod 4 never happens for odd p
        raise ArithmeticError("no quadratic non-residue found")
    M = s
    cc = gf_pow_mod(z, Q, f, p, ZZ)
    t = gf_pow_mod(c, Q, f, p, ZZ)
    R = gf_pow_mod(c, (Q + 1) // 2, f, p, ZZ)
    while t != one:
        i, tt = 0, t
        while tt != one:
            tt = gf_rem(gf_mul(tt, tt, p, ZZ), f, p, ZZ)
            i += 1
        b = cc
        for _ in range(M - i - 1):
            b = gf_rem(gf_mul(b, b, p, ZZ), f, p, ZZ)
        M = i
        cc = gf_rem(gf_mul(b, b, p, ZZ), f, p, ZZ)
        t = gf_rem(gf_mul(t, cc, p, ZZ), f, p, ZZ)
        R = gf_rem(gf_mul(R, b, p, ZZ), f, p, ZZ)
    return R


def _lifting_prime(a_int: list[int], F: CyclotomicField, max_tries: int = 200):
    """An odd prime of maximal multiplicative order mod m at which a is a unit."""
    m = F.m
    lam = _carmichael(m)
    tries = 0
    p = 2
    while tries < max_tries:
        p += 1
        if not isprime(p) or m % p == 0 or p == 2:
            continue
        if _mult_order(p % m, m) != lam:
            continue
        tries += 1
        phi_gf = _gf(F.poly, p)
        _, factors = gf_factor_sqf(phi_gf, p, ZZ)
        factors = [[int(c) for c in f] for f in factors]
        a_gf = _gf(a_int, p)
        images = [gf_rem(a_gf, f, p, ZZ) for f in factors]
        if all(images):
            return p, factors, images
    return None


def _hensel_sqrt(a_int: list[int], F: CyclotomicField, height_cap: int):
    """Returns ('square', coeffs) | ('nonsquare', certificate) | None (height cap hit)."""
    found = _lifting_prime(a_int, F)
    if found is None:
        return None
    p, factors, images = found
    phi = F.phi
    phi_gf = _gf(F.poly, p)
    w_parts = []
    for f, c in zip(factors, images):
        cinv, _, _ = gf_gcdex(c, f, p, ZZ)
        w = _fq_sqrt(cinv, f, p)
        if w is None:
            return "nonsquare", {"kind": "inert-factor", "p": p, "factor": _from_gf(f, len(f))}
        w_parts.append(w)
    idempotents = []
    for f in factors:
        g = gf_quo(phi_gf, f, p, ZZ)
        s, _, _ = gf_gcdex(g, f, p, ZZ)
        idempotents.append(gf_rem(gf_mul(g, s, p, ZZ), phi_gf, p, ZZ))

    starts = []
    for signs in itertools.product((1, -1), repeat=len(factors) - 1):
        acc = []
        for sgn, e, w in zip((1,) + signs, idempotents, w_parts):
            term = gf_rem(gf_mul(e, w, p, ZZ), phi_gf, p, ZZ)
            if sgn < 0:
                term = [(-x) % p for x in term]
            acc = _gf_add(acc, term, p)
        starts.append(_from_gf(acc, phi))

    a = list(a_int)
    target = 2 * height_cap + 2
    N = p
    ws = starts
    while True:
        N = N * N
        inv2 = pow(2, -1, N)
        new_ws = []
        for w in ws:
            w2 = _mulmod(w, w, F, N)
            aw2 = _mulmod(a, w2, F, N)
            corr = [(-x) % N for x in aw2]
            corr[0] = (corr[0] + 3) % N
            new_ws.append([x * inv2 % N for x in _mulmod(w, corr, F, N)])
        ws = new_ws
        for w in ws:
            y = _mulmod(a, w, F, N)
            rec = [rational_reconstruction(c, N) for c in y]
            if any(r is None for r in rec):
                continue
            cand = CycNum.from_fractions(F.m, rec)
            if cand * cand == CycNum(F.m, a):
                return "square", cand
        if N.bit_length() > target:
            return None


def _gf_add(u, v, p):
    n = max(len(u), len(v))
    u = [0] * (n - len(u)) + list(u)
    v = [0] * (n - len(v)) + list(v)
    out = [(x + y) % p for x, y in zip(u, v)]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _mulmod(x, y, F: CyclotomicField, N: int) -> list[int]:
    return [c % N for c in F.mul_int(x, y)]


def sqrt_in_cyclotomic(a: CycNum, probabilistic_primes: int = DEFAULT_PROBABILISTIC_PRIMES,
                       height_cap: int = DEFAULT_HEIGHT_CAP) -> SqrtResult:
    """Decide whether ``a`` is a square in Q(w_m) and, if so, return a root.

    Non-squares are certified by a quadratic non-residue among up to
    ``probabilistic_primes`` split embeddings or at the lifting prime. Squares
    are found by Newton lifting of an inverse square root at a prime where
    Phi_m has few factors, then rational reconstruction and an exact check.
    Roots are normalised so the first nonzero coefficient is positive.
    """
    m = a.m
    if a.is_zero():
        return SqrtResult("zero", root=a)
    q = a.is_rational()
    if q is not None:
        r = _rational_sqrt(q)
        if r is not None:
            return SqrtResult("square", root=CycNum.rational(m, r))
    # a * den^2 has integer coefficients and the same square class
    D = a.den
    a_int = [c * D for c in a.num]
    a_cleared = CycNum(m, a_int)
    # Count primes, not embeddings: a value fixed by a subgroup of the Galois
    # group has equal residues at conjugate embeddings, so only distinct primes
    # give independent chances (1/2 each) of exposing a non-square.
    checked = 0
    for p in split_primes(m):
        if checked >= probabilistic_primes:
            break
        residues = [a_cleared.residue(e) for e in _embeddings_at(m, p)]
        if not any(residues):
            continue
        checked += 1
        for e, r in zip(_embeddings_at(m, p), residues):
            if r and pow(r, (p - 1) // 2, p) != 1:
                return SqrtResult("nonsquare", certificate={"kind": "embedding", "p": e.p, "z": e.z},
                                  primes_checked=checked)
    if q is not None and field(m).phi == 1:
        return SqrtResult("nonsquare", certificate={"kind": "rational"}, primes_checked=checked)
    lifted = _hensel_sqrt(a_int, field(m), height_cap)
    if lifted is None:
        return SqrtResult("undetermined", primes_checked=checked, confidence=1 - 2.0 ** (-checked))
    kind, payload = lifted
    if kind == "nonsquare":
        return SqrtResult("nonsquare", certificate=payload, primes_checked=checked)
    root = _normalize_sign(payload / D)
    assert root * root == a
    return SqrtResult("square", root=root, primes_checked=checked)
