"""Time the numba kernels against their numpy twins on representative inputs.

Run: python3 benchmarks/bench_kernels.py [--repeat N]
Each kernel is called once before timing so JIT compilation is excluded.
"""

import argparse
import time

import numpy as np

from semicayley import kernels
from semicayley.catalog import catalog_group
from semicayley.chartable import dixon_prime
from semicayley.groups import symmetric_group


def _inputs():
    rng = np.random.default_rng(0)
    G = symmetric_group(5)
    cc = G.conjugacy
    x = rng.integers(0, 3, G.order).astype(np.int64)
    y = rng.integers(0, 3, G.order).astype(np.int64)
    A = rng.integers(0, 2, (48, 48)).astype(np.int64)
    p = (1 << 26) - 5
    H = catalog_group("SL(2,3)")
    q = dixon_prime(H)
    M = rng.integers(0, q, (40, 40)).astype(np.int64)
    roots = np.array([1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], np.int64)  # x^12 - 1 style probe
    return {
        "berkowitz_mod_p (48x48)": ("berkowitz_mod_p", (A % p, np.int64(p))),
        "mset_product (S5)": ("mset_product", (np.ascontiguousarray(G.mul), x, y)),
        "structure_constants (S5)": ("structure_constants", tuple(
            np.ascontiguousarray(np.asarray(v, np.int64))
            for v in (G.mul, G.inv, cc.class_of, cc.representatives))),
        "rref_mod_p (40x40)": ("rref_mod_p", (M, np.int64(q))),
        "poly_roots_mod_p (deg 12)": ("poly_roots_mod_p", (roots % q, np.int64(q))),
    }


def _time(fn, args, repeat):
    fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.NUMBA is None:
        print("numba is not installed; only the numpy kernels can be timed")
    print(f"{'kernel':30s} {'numpy [ms]':>12s} {'numba [ms]':>12s} {'speedup':>9s}")
    for label, (name, call_args) in _inputs().items():
        t_np = _time(getattr(kernels.NUMPY, name), call_args, args.repeat)
        if kernels.NUMBA is None:
            print(f"{label:30s} {t_np * 1e3:12.3f} {'-':>12s} {'-':>9s}")
            continue
        t_nb = _time(getattr(kernels.NUMBA, name), call_args, args.repeat)
        print(f"{label:30s} {t_np * 1e3:12.3f} {t_nb * 1e3:12.3f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
