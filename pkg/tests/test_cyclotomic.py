from fractions import Fraction

import functools
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semicayley.cyclotomic import (
    CycNum,
    GaloisAut,
    PrimeEmbedding,
    cyc_arith,
    cyclotomic_polynomial,
    format_cycnum,
    galois_apply,
    is_rational,
    prime_embeddings,
    rational_reconstruction,
    sqrt_in_cyclotomic,
)
from semicayley.groups import euler_phi

MODULI = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 21, 24]


def cyc(m):
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)
    n = euler_phi(m)
    return st.lists(coeff, min_size=n, max_size=n).map(lambda cs: CycNum.from_fractions(m, cs))


any_cyc = st.sampled_from(MODULI).flatmap(lambda m: st.tuples(cyc(m), cyc(m), cyc(m)))


@pytest.mark.parametrize("m, poly", [
    (1, (-1, 1)),
    (6, (1, -1, 1)),
    (5, (1, 1, 1, 1, 1)),
    (8, (1, 0, 0, 0, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomial(m, poly):
    assert cyclotomic_polynomial(m) == poly


def test_omega_squared_m6():
    w = CycNum.root_of_unity(6)
    assert w * w == w - 1
    assert cyc_arith(w, w, "mul") == w - 1


def test_four_plus_four_omega_squared():
    w = CycNum.root_of_unity(3)
    assert (4 + 4 * w) ** 2 == 16 * w


def test_galois_on_omega6():
    w = CycNum.root_of_unity(6)
    assert w.galois(5) == 1 - w
    assert galois_apply(GaloisAut(6, 5), w) == 1 - w
    assert galois_apply(GaloisAut(6, 5), CycNum.rational(6, Fraction(7, 3))) == CycNum.rational(6, Fraction(7, 3))


def test_galois_aut_rejects_nonunit():
    with pytest.raises(ValueError):
        GaloisAut(6, 2)


def test_residue_at_seven():
    e = PrimeEmbedding(6, 7, 3)
    assert CycNum.root_of_unity(6).residue(e) == 3
    assert CycNum.one(6).residue(e) == 1


def test_embedding_validation():
    with pytest.raises(ValueError):
        PrimeEmbedding(6, 7, 2)  # 2 is not a primitive 6th root mod 7


def test_is_rational():
    assert is_rational(CycNum.rational(6, 2)) == 2
    assert is_rational(CycNum.root_of_unity(3)) is None
    w = CycNum.root_of_unity(5)
    golden = w + w.galois(4)
    assert golden.is_rational() is None
    assert abs(complex(golden) - 0.6180339887498949) < 1e-12


def test_sqrt_of_16_omega():
    w = CycNum.root_of_unity(3)
    res = sqrt_in_cyclotomic(16 * w)
    assert res.status == "square"
    assert res.root in (4 + 4 * w, -(4 + 4 * w))


def test_sqrt_of_zero():
    res = sqrt_in_cyclotomic(CycNum.zero(6))
    assert res.status == "zero" and res.root.is_zero()


def test_61_is_not_a_square_in_q_omega6():
    res = sqrt_in_cyclotomic(CycNum.rational(6, 61))
    assert res.status == "nonsquare"
    assert res.certificate == {"kind": "embedding", "p": 7, "z": 3}


def test_minus_three_is_a_square_in_q_omega3():
    res = sqrt_in_cyclotomic(CycNum.rational(3, -3))
    assert res.status == "square" and res.root ** 2 == CycNum.rational(3, -3)


def test_sqrt_two_in_q_omega8():
    res = sqrt_in_cyclotomic(CycNum.rational(8, 2))
    assert res.status == "square"
    assert res.root ** 2 == 2


def test_rational_squares_need_no_extension():
    res = sqrt_in_cyclotomic(CycNum.rational(1, Fraction(9, 4)))
    assert res.status == "square" and res.root == CycNum.rational(1, Fraction(3, 2))


def test_rational_reconstruction():
    N = 10007 * 10009
    assert rational_reconstruction((3 * pow(7, -1, N)) % N, N) == Fraction(3, 7)


def test_prime_embeddings_are_consistent():
    for e in itertools.islice(prime_embeddings(12), 5):
        assert (e.p - 1) % 12 == 0
        assert pow(e.z, 12, e.p) == 1 and pow(e.z, 6, e.p) != 1


def test_format():
    assert format_cycnum(CycNum.rational(6, -16) + 16 * CycNum.root_of_unity(6)) == "-16 + 16*w6"
    assert format_cycnum(CycNum.rational(1, Fraction(-1, 2))) == "-1/2"


def test_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        CycNum.root_of_unity(3) + CycNum.root_of_unity(4)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        CycNum.one(6) / CycNum.zero(6)


# -- field laws ------------------------------------------------------------------


@given(any_cyc)
def test_ring_laws(xyz):
    x, y, z = xyz
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == CycNum.zero(x.m)


@given(any_cyc)
def test_inverse(xyz):
    x = xyz[0]
    if not x.is_zero():
        assert x * x.inverse() == CycNum.one(x.m)
        assert cyc_arith(x, x, "div") == CycNum.one(x.m)


@given(any_cyc)
def test_numeric_embedding_is_a_ring_map(xyz):
    x, y, _ = xyz
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-6 * (1 + abs(complex(x)) * abs(complex(y)))


@given(any_cyc, st.integers(min_value=1, max_value=200))
def test_galois_is_a_field_automorphism(xyz, t):
    x, y, _ = xyz
    m = x.m
    from math import gcd
    if gcd(t, m) != 1:
        return
    assert (x * y).galois(t) == x.galois(t) * y.galois(t)
    assert (x + y).galois(t) == x.galois(t) + y.galois(t)
    assert x.galois(1) == x


@functools.lru_cache(maxsize=None)
def _embedding(m):
    return next(prime_embeddings(m, start=50))


@given(any_cyc)
def test_residue_is_a_ring_homomorphism(xyz):
    x, y, _ = xyz
    e = _embedding(x.m)
    if x.den % e.p == 0 or y.den % e.p == 0:
        return
    p = e.p
    assert (x * y).residue(e) == x.residue(e) * y.residue(e) % p
    assert (x + y).residue(e) == (x.residue(e) + y.residue(e)) % p


@given(any_cyc)
def test_squares_have_roots(xyz):
    x = xyz[0]
    res = sqrt_in_cyclotomic(x * x)
    if x.is_zero():
        assert res.status == "zero"
    else:
        assert res.status == "square"
        assert res.root in (x, -x)
