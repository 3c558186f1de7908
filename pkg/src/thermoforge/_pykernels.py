"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``."""
import numpy as np

BACKEND = "python"


def renyi_logsum_grid(logp, logq, alphas):
    """log sum_i exp(a*logp_i + (1-a)*logq_i) for each finite a not in {0, 1}."""
    logp = np.asarray(logp, dtype=float)
    logq = np.asarray(logq, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    zp = np.isneginf(logp)
    zq = np.isneginf(logq)
    both = zp & zq
    only_p = zp & ~zq
    only_q = zq & ~zp
    keep = ~(zp | zq)
    out = np.empty(alphas.shape[0])
    a = alphas[:, None]
    with np.errstate(invalid="ignore"):
        t = a * logp[keep][None, :] + (1.0 - a) * logq[keep][None, :]
    if t.shape[1] == 0:
        out[:] = -np.inf
    else:
        mx = t.max(axis=1)
        out = mx + np.log(np.exp(t - mx[:, None]).sum(axis=1))
    blown = (only_p.any() & (alphas <= 0.0)) | (only_q.any() & (alphas >= 1.0))
    out[blown] = np.inf
    return out


def lorenz_margin(xa, ya, xb, yb):
    """Smallest f_a(x) - f_b(x) over every breakpoint of either curve."""
    d1 = np.asarray(ya) - np.interp(xa, xb, yb)
    d2 = np.interp(xb, xa, ya) - np.asarray(yb)
    return float(min(d1.min(), d2.min()))


def simplex_phase1(T, basis, max_iter, tol):
    """Pivot a phase-1 tableau in place with Bland's rule.

    Same tableau layout and return convention as the compiled kernel.
    """
    m = T.shape[0] - 1
    nv = T.shape[1] - 1
    it = 0
    while True:
        neg = np.nonzero(T[m, :nv] < -tol)[0]
        if neg.size == 0:
            return 0, it
        if it >= max_iter:
            return 1, it
        c = int(neg[0])
        col = T[:m, c]
        rows = np.nonzero(col > tol)[0]
        if rows.size == 0:
            return 0, it
        ratios = T[rows, nv] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + 1e-15]
        r = int(tied[np.argmin(basis[tied])])
        T[r] /= T[r, c]
        f = T[:, c].copy()
        f[r] = 0.0
        T -= np.outer(f, T[r])
        basis[r] = c
        it += 1
