"""Regenerate the frozen reference values in ``frozen.json``.

Uses mpmath at 50 digits and direct textbook formulas only; nothing from the
package is imported, so the values are an independent oracle.
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def gibbs(levels, beta):
    w = [mp.e ** (-beta * e) for e in levels]
    z = mp.fsum(w)
    return [x / z for x in w], mp.log(z)


def div(p, q, a):
    """Renyi divergence for a >= 0 with full-support q."""
    pairs = [(x, y) for x, y in zip(p, q) if x > 0]
    if a == 0:
        return -mp.log(mp.fsum(y for _, y in pairs))
    if a == 1:
        return mp.fsum(x * mp.log(x / y) for x, y in pairs)
    if a == mp.inf:
        return max(mp.log(x / y) for x, y in pairs)
    return mp.log(mp.fsum(x ** a * y ** (1 - a) for x, y in pairs)) / (a - 1)


def free_entropy(p, levels1, levels2, b1, b2, a):
    g1, lz1 = gibbs(levels1, b1)
    g2, lz2 = gibbs(levels2, b2)
    q = [x * y for x in g1 for y in g2]
    return div(p, q, a) - lz1 - lz2


def outer(a, b):
    return [x * y for x in a for y in b]


def swap(p, d1, d2):
    return [p[i * d2 + j] for j in range(d2) for i in range(d1)]


def inf_over_alpha(f):
    grid = [mp.mpf(0), mp.inf] + [mp.mpf(10) ** (mp.mpf(k) / 200) for k in range(-800, 801)]
    vals = [(f(a), a) for a in grid]
    v, a = min(vals)
    if a in (0, mp.inf):
        return v
    lo, hi = a / mp.mpf(10) ** mp.mpf(0.01), a * mp.mpf(10) ** mp.mpf(0.01)
    # golden section in log alpha
    g = (mp.sqrt(5) - 1) / 2
    x0, x1 = mp.log(lo), mp.log(hi)
    for _ in range(200):
        c, d = x1 - g * (x1 - x0), x0 + g * (x1 - x0)
        if f(mp.e ** c) < f(mp.e ** d):
            x1 = d
        else:
            x0 = c
    return min(v, f(mp.e ** ((x0 + x1) / 2)))


def smoothed_iid(p0, n, eps):
    """Smoothed D_min and D_max of Bernoulli(p0)^n against uniform, by types.

    Outcomes with k zeros share p = p0^k (1-p0)^(n-k) and q = 2^-n; when
    p0 > 1/2 larger k means a larger ratio p/q.
    """
    groups = [(p0 ** k * (1 - p0) ** (n - k), mp.binomial(n, k)) for k in range(n, -1, -1)]
    q1 = mp.mpf(2) ** (-n)
    # D_min: cheapest q-mass of a set holding p-mass >= 1 - eps, greedy by ratio
    need, mass, taken = 1 - eps - mp.mpf("1e-12"), mp.mpf(0), 0
    for pk, c in groups:
        if mass >= need:
            break
        m = min(c, int(mp.ceil((need - mass) / pk)))
        mass += m * pk
        taken += m
    dmin = -mp.log(taken * q1)
    # D_max: smallest lambda with sum (p - lambda q)_+ <= eps
    def excess(lam):
        return mp.fsum(c * max(pk - lam * q1, 0) for pk, c in groups)
    lo, hi = mp.mpf(0), groups[0][0] / q1
    for _ in range(300):
        mid = (lo + hi) / 2
        if excess(mid) > eps:
            lo = mid
        else:
            hi = mid
    return dmin, mp.log(hi)


def main():
    out = {}
    b1, b2 = mp.mpf("0.5"), mp.mpf("1.0")
    h = [mp.mpf(0), mp.mpf(1)]
    g1, lz1 = gibbs(h, b1)
    g2, lz2 = gibbs(h, b2)
    out["qubit_q00"] = g1[0] * g2[0]
    out["qubit_logZ"] = lz1 + lz2
    out["qubit_w_ext_bath1"] = (lz1 + lz2) / b1
    out["renyi_entropy_2_of_07_03"] = -mp.log(mp.mpf("0.7") ** 2 + mp.mpf("0.3") ** 2)
    out["d1_07_03_vs_half"] = mp.mpf("0.7") * mp.log(mp.mpf("1.4")) + mp.mpf("0.3") * mp.log(mp.mpf("0.6"))

    # hot/cold product engine fixture: ground state on system 1, Gibbs(0.1) on system 2
    hot, _ = gibbs(h, mp.mpf("0.1"))
    p = outer([mp.mpf(1), mp.mpf(0)], hot)
    f = lambda a: free_entropy(p, h, h, b1, b2, a) - free_entropy(swap(p, 2, 2), h, h, b1, b2, a)
    out["hot_cold_budget"] = inf_over_alpha(f)
    out["hot_cold_drop_alpha1"] = f(1)

    # alpha = 1 row of the qubit engine table: rho = Gibbs(beta1 / 2), sigma = Gibbs(2 beta2)
    rho, _ = gibbs(h, b1 / 2)
    sig, _ = gibbs(h, 2 * b2)
    def local(state, beta, a):
        g, lz = gibbs(h, beta)
        return div(state, g, a) - lz
    w1 = (local(rho, b1, 1) - local(sig, b1, 1)) / b1
    w2 = (local(sig, b2, 1) - local(rho, b2, 1)) / b2
    out["qubit_table_alpha1_w1"] = w1
    out["qubit_table_alpha1_w2"] = w2

    # correlated fixture diag(0.6, 0, 0, 0.4): mutual information and budget
    tau = [mp.mpf("0.6"), 0, 0, mp.mpf("0.4")]
    m = [mp.mpf("0.6"), mp.mpf("0.4")]
    out["correlated_mutual_information"] = -2 * mp.fsum(x * mp.log(x) for x in m) + mp.fsum(
        x * mp.log(x) for x in tau if x > 0)
    prod = outer(m, m)
    f = lambda a: free_entropy(tau, h, h, b1, b2, a) - free_entropy(prod, h, h, b1, b2, a)
    out["correlated_budget"] = inf_over_alpha(f)

    # smoothed per-copy values for p = (0.7, 0.3)^N against uniform, grouped by type
    eps = mp.mpf("0.05")
    for n in (1, 2, 14):
        dmin, dmax = smoothed_iid(mp.mpf("0.7"), n, eps)
        out[f"smoothed_dmin_per_copy_n{n}"] = dmin / n
        out[f"smoothed_dmax_per_copy_n{n}"] = dmax / n

    path = Path(__file__).with_name("frozen.json")
    path.write_text(json.dumps({k: (float(v) if not isinstance(v, int) else v) for k, v in out.items()},
                               indent=2, sort_keys=True) + "\n")
    for k, v in sorted(out.items()):
        print(k, mp.nstr(v, 20) if not isinstance(v, int) else v)


if __name__ == "__main__":
    main()
