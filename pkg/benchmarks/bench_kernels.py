"""Time the compiled and pure-Python kernels on identical inputs.

Run with ``python benchmarks/bench_kernels.py``; prints one line per kernel
and size with the best-of-5 time for each backend and the speedup.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

import thermoforge.lp as lp_mod
from thermoforge import _pykernels
from thermoforge.majorization import d_majorize_lp

try:
    from thermoforge import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _cases(rng, n):
    p = rng.exponential(size=n)
    p /= p.sum()
    q = rng.exponential(size=n)
    q /= q.sum()
    alphas = np.logspace(-3, 3, 120)
    xa = np.concatenate(([0.0], np.cumsum(np.sort(q))))
    ya = np.concatenate(([0.0], np.cumsum(np.sort(p)[::-1])))
    xb = np.concatenate(([0.0], np.cumsum(q)))
    yb = np.concatenate(([0.0], np.cumsum(p)))
    return {
        "renyi_logsum_grid": lambda m: m.renyi_logsum_grid(np.log(p), np.log(q), alphas),
        "lorenz_margin": lambda m: m.lorenz_margin(xa, ya, xb, yb),
    }


def _lp_case(rng, n):
    p = rng.exponential(size=n)
    p /= p.sum()
    q = rng.exponential(size=n)
    q /= q.sum()
    p2 = rng.exponential(size=n)
    p2 /= p2.sum()
    return p, q, p2


def best(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=5)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 16, 64, 256])
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["cython"] = _ckernels
    print(f"{'kernel':<22}{'n':>6}" + "".join(f"{b + ' [us]':>16}" for b in backends) + f"{'speedup':>10}")
    for n in args.sizes:
        for name, call in _cases(rng, n).items():
            t = {b: best(lambda m=m: call(m), 200) * 1e6 for b, m in backends.items()}
            sp = t["python"] / t["cython"] if "cython" in t else float("nan")
            print(f"{name:<22}{n:>6}" + "".join(f"{v:>16.2f}" for v in t.values()) + f"{sp:>10.2f}")
    # the simplex kernel is timed through the full LP, switching backends in place
    for n in (4, 6, 8):
        p, q, p2 = _lp_case(rng, n)
        t = {}
        for b, m in backends.items():
            old = lp_mod.kernels.simplex_phase1
            lp_mod.kernels.simplex_phase1 = m.simplex_phase1
            try:
                t[b] = best(lambda: d_majorize_lp(p, q, p2, q), 5) * 1e6
            finally:
                lp_mod.kernels.simplex_phase1 = old
        sp = t["python"] / t["cython"] if "cython" in t else float("nan")
        print(f"{'d_majorize_lp':<22}{n:>6}" + "".join(f"{v:>16.2f}" for v in t.values()) + f"{sp:>10.2f}")


if __name__ == "__main__":
    main()
