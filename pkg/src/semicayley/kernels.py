"""Integer kernels on group tables and matrices mod p.

Each kernel has a loop implementation compiled with numba and a vectorised
numpy implementation. Both are always importable (``NUMBA`` / ``NUMPY``
namespaces) so they can be compared; the module-level names dispatch to
numba unless ``SEMICAYLEY_NO_NUMBA`` is set.

All ``*_mod_p`` kernels expect ``p < 2**26`` and inputs already reduced into
``[0, p)``; that keeps every numpy dot product below 2**63 for n <= 2048.
"""

from types import SimpleNamespace

import numpy as np

from ._jit import HAVE_NUMBA, USE_NUMBA, njit

MAX_KERNEL_PRIME = 1 << 26


# ---------------------------------------------------------------------------
# numba implementations


@njit
def _modpow_nb(b, e, p):
    r = 1
    b = b % p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


@njit
def _berkowitz_nb(A, p):
    n = A.shape[0]
    vec = np.zeros(n + 1, np.int64)
    vec[0] = 1
    if n == 0:
        return vec
    vec[1] = (p - A[n - 1, n - 1]) % p
    t = np.zeros(n + 1, np.int64)
    v = np.zeros(n, np.int64)
    w = np.zeros(n, np.int64)
    new = np.zeros(n + 1, np.int64)
    for k in range(n - 2, -1, -1):
        s = n - k
        t[0] = 1
        t[1] = (p - A[k, k]) % p
        for j in range(s - 1):
            v[j] = A[k + 1 + j, k]
        for i in range(s - 1):
            acc = 0
            for j in range(s - 1):
                acc += A[k, k + 1 + j] * v[j]
            t[i + 2] = (p - acc % p) % p
            if i < s - 2:
                for r in range(s - 1):
                    acc = 0
                    for j in range(s - 1):
                        acc += A[k + 1 + r, k + 1 + j] * v[j]
                    w[r] = acc % p
                for r in range(s - 1):
                    v[r] = w[r]
        for r in range(s + 1):
            acc = 0
            hi = r if r < s - 1 else s - 1
            for c in range(hi + 1):
                acc += t[r - c] * vec[c]
            new[r] = acc % p
        for r in range(s + 1):
            vec[r] = new[r]
    return vec


@njit
def _mset_product_nb(mul, x, y):
    n = x.shape[0]
    out = np.zeros(n, np.int64)
    for i in range(n):
        xi = x[i]
        if xi == 0:
            continue
        for j in range(n):
            yj = y[j]
            if yj != 0:
                out[mul[i, j]] += xi * yj
    return out


@njit
def _mset_image_nb(image, x):
    n = x.shape[0]
    out = np.zeros(n, np.int64)
    for i in range(n):
        if x[i] != 0:
            out[image[i]] += x[i]
    return out


@njit
def _structure_constants_nb(mul, inv, class_of, reps):
    n = mul.shape[0]
    r = reps.shape[0]
    a = np.zeros((r, r, r), np.int64)
    for k in range(r):
        z = reps[k]
        for x in range(n):
            y = mul[inv[x], z]
            a[class_of[x], class_of[y], k] += 1
    return a


@njit
def _rref_mod_p_nb(M, p):
    R = M.copy() % p
    rows, cols = R.shape
    pivots = np.full(min(rows, cols), -1, np.int64)
    prow = 0
    for c in range(cols):
        if prow >= rows:
            break
        piv = -1
        for r in range(prow, rows):
            if R[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != prow:
            for j in range(cols):
                tmp = R[prow, j]
                R[prow, j] = R[piv, j]
                R[piv, j] = tmp
        inv = _modpow_nb(R[prow, c], p - 2, p)
        for j in range(cols):
            R[prow, j] = (R[prow, j] * inv) % p
        for r in range(rows):
            if r != prow and R[r, c] != 0:
                f = R[r, c]
                for j in range(cols):
                    R[r, j] = (R[r, j] - f * R[prow, j]) % p
        pivots[prow] = c
        prow += 1
    return R, pivots[:prow]


@njit
def _poly_roots_mod_p_nb(coeffs, p):
    # coeffs highest degree first
    out = np.empty(p, np.int64)
    cnt = 0
    for x in range(p):
        acc = 0
        for c in coeffs:
            acc = (acc * x + c) % p
        if acc == 0:
            out[cnt] = x
            cnt += 1
    return out[:cnt]


# ---------------------------------------------------------------------------
# numpy implementations


def _berkowitz_np(A, p):
    p = int(p)
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    vec = np.zeros(n + 1, np.int64)
    vec[0] = 1
    if n == 0:
        return vec
    vec = np.array([1, (p - A[n - 1, n - 1]) % p], np.int64)
    for k in range(n - 2, -1, -1):
        s = n - k
        R = A[k, k + 1:]
        Ap = A[k + 1:, k + 1:]
        v = A[k + 1:, k].copy()
        t = np.empty(s + 1, np.int64)
        t[0] = 1
        t[1] = (p - A[k, k]) % p
        for i in range(s - 1):
            t[i + 2] = (p - int(R @ v) % p) % p
            if i < s - 2:
                v = (Ap @ v) % p
        vec = np.convolve(t, vec)[: s + 1] % p
    return vec


def _mset_product_np(mul, x, y):
    n = x.shape[0]
    ix = np.flatnonzero(x)
    iy = np.flatnonzero(y)
    out = np.zeros(n, np.int64)
    if ix.size and iy.size:
        np.add.at(out, mul[np.ix_(ix, iy)].ravel(), np.outer(x[ix], y[iy]).ravel())
    return out


def _mset_image_np(image, x):
    out = np.zeros(x.shape[0], np.int64)
    np.add.at(out, image, x)
    return out


def _structure_constants_np(mul, inv, class_of, reps):
    r = reps.shape[0]
    a = np.zeros((r, r, r), np.int64)
    for k in range(r):
        ys = mul[inv, reps[k]]
        np.add.at(a[:, :, k], (class_of, class_of[ys]), 1)
    return a


def _rref_mod_p_np(M, p):
    p = int(p)
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    prow = 0
    for c in range(cols):
        if prow >= rows:
            break
        nz = np.flatnonzero(R[prow:, c])
        if nz.size == 0:
            continue
        piv = prow + nz[0]
        if piv != prow:
            R[[prow, piv]] = R[[piv, prow]]
        R[prow] = (R[prow] * pow(int(R[prow, c]), p - 2, p)) % p
        f = R[:, c].copy()
        f[prow] = 0
        R = (R - np.outer(f, R[prow])) % p
        pivots.append(c)
        prow += 1
    return R, np.array(pivots, np.int64)


def _poly_roots_mod_p_np(coeffs, p):
    p = int(p)
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, np.int64)
    for c in coeffs:
        acc = (acc * xs + int(c)) % p
    return np.flatnonzero(acc == 0).astype(np.int64)


NUMPY = SimpleNamespace(
    berkowitz_mod_p=_berkowitz_np,
    mset_product=_mset_product_np,
    mset_image=_mset_image_np,
    structure_constants=_structure_constants_np,
    rref_mod_p=_rref_mod_p_np,
    poly_roots_mod_p=_poly_roots_mod_p_np,
)

NUMBA = (
    SimpleNamespace(
        berkowitz_mod_p=_berkowitz_nb,
        mset_product=_mset_product_nb,
        mset_image=_mset_image_nb,
        structure_constants=_structure_constants_nb,
        rref_mod_p=_rref_mod_p_nb,
        poly_roots_mod_p=_poly_roots_mod_p_nb,
    )
    if HAVE_NUMBA
    else None
)

_active = NUMBA if USE_NUMBA else NUMPY
BACKEND = "numba" if USE_NUMBA else "numpy"


def berkowitz_mod_p(A, p):
    """Coefficients of det(xI - A) mod p, highest degree first."""
    A = np.ascontiguousarray(np.asarray(A, dtype=np.int64) % p)
    return _active.berkowitz_mod_p(A, np.int64(p))


def mset_product(mul, x, y):
    return _active.mset_product(np.ascontiguousarray(mul), np.asarray(x, np.int64), np.asarray(y, np.int64))


def mset_image(image, x):
    """Push multiplicities forward along an element map."""
    return _active.mset_image(np.ascontiguousarray(image), x)


def structure_constants(mul, inv, class_of, reps):
    """a[i, j, k] = #{(x, y) in C_i x C_j : xy = reps[k]}."""
    return _active.structure_constants(*(np.ascontiguousarray(np.asarray(x, dtype=np.int64))
                                         for x in (mul, inv, class_of, reps)))


def rref_mod_p(M, p):
    return _active.rref_mod_p(np.ascontiguousarray(np.asarray(M, dtype=np.int64)), np.int64(p))


def poly_roots_mod_p(coeffs, p):
    return _active.poly_roots_mod_p(np.asarray(coeffs, dtype=np.int64) % p, np.int64(p))


def nullspace_mod_p(M, p):
    """Basis (as columns) of the right kernel of M over F_p."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, pivots = rref_mod_p(M, p)
    pivots = [int(c) for c in pivots]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for r, pc in enumerate(pivots):
            basis[pc, j] = (-R[r, fc]) % p
    return basis
