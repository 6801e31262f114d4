"""The numba kernels and their numpy twins must agree exactly."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from semicayley import kernels
from semicayley.catalog import catalog_group

pytestmark = pytest.mark.skipif(kernels.NUMBA is None, reason="numba not installed")

P = (1 << 26) - 5
SMALL_P = 1009


def same(name, *args):
    a = getattr(kernels.NUMPY, name)(*args)
    b = getattr(kernels.NUMBA, name)(*args)
    if isinstance(a, tuple):
        assert len(a) == len(b)
        for x, y in zip(a, b):
            assert np.array_equal(np.asarray(x), np.asarray(y))
    else:
        assert np.array_equal(np.asarray(a), np.asarray(b))
    return a


@settings(max_examples=60)
@given(arrays(np.int64, st.tuples(st.integers(0, 14)).map(lambda t: (t[0], t[0])),
              elements=st.integers(0, P - 1)))
def test_berkowitz(A):
    same("berkowitz_mod_p", A, np.int64(P))


@settings(max_examples=60)
@given(arrays(np.int64, st.tuples(st.integers(1, 8), st.integers(1, 8)), elements=st.integers(0, SMALL_P - 1)))
def test_rref(M):
    same("rref_mod_p", M, np.int64(SMALL_P))


@settings(max_examples=40)
@given(st.lists(st.integers(0, SMALL_P - 1), min_size=1, max_size=8))
def test_poly_roots(coeffs):
    same("poly_roots_mod_p", np.array(coeffs, np.int64), np.int64(SMALL_P))


@pytest.mark.parametrize("name", ["S3", "A4", "Q16", "SL(2,3)", "Z2xZ12"])
def test_group_kernels(name):
    G = catalog_group(name)
    cc = G.conjugacy
    rng = np.random.default_rng(0)
    x = rng.integers(0, 4, G.order).astype(np.int64)
    y = rng.integers(0, 4, G.order).astype(np.int64)
    mul = np.ascontiguousarray(G.mul)
    prod = same("mset_product", mul, x, y)
    assert prod.sum() == x.sum() * y.sum()
    same("mset_image", np.ascontiguousarray(G.inv), x)
    a = same("structure_constants", *(np.ascontiguousarray(np.asarray(v, np.int64))
                                      for v in (G.mul, G.inv, cc.class_of, cc.representatives)))
    # class sum with the identity class is the identity map
    r = len(cc)
    assert np.array_equal(a[0], np.eye(r, dtype=a.dtype))


def test_berkowitz_known_value():
    A = np.array([[2, 1], [1, 2]], np.int64)
    # x^2 - 4x + 3
    assert kernels.berkowitz_mod_p(A, 101).tolist() == [1, 97, 3]


def test_nullspace():
    M = np.array([[1, 2, 3], [2, 4, 6]], np.int64)
    B = kernels.nullspace_mod_p(M, 101)
    assert B.shape == (3, 2)
    assert not (M @ B % 101).any()
