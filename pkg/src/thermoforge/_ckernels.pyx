# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: log-sum grids, Lorenz dominance walks and simplex pivots.

Every function here has a behaviourally identical twin in ``_pykernels``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, INFINITY, isinf

cnp.import_array()

BACKEND = "cython"


def renyi_logsum_grid(double[::1] logp, double[::1] logq, double[::1] alphas):
    """log sum_i exp(a*logp_i + (1-a)*logq_i) for each finite a not in {0, 1}."""
    cdef Py_ssize_t n = logp.shape[0]
    cdef Py_ssize_t m = alphas.shape[0]
    cdef Py_ssize_t i, k
    cdef double a, t, mx, acc, lp, lq
    cdef bint blown
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    cdef double[::1] terms = np.empty(n, dtype=np.float64)
    for k in range(m):
        a = alphas[k]
        mx = -INFINITY
        blown = False
        for i in range(n):
            lp = logp[i]
            lq = logq[i]
            if isinf(lp) and isinf(lq):
                terms[i] = -INFINITY
                continue
            if isinf(lp):
                if a > 0.0:
                    terms[i] = -INFINITY
                else:
                    blown = True
                    break
                continue
            if isinf(lq):
                if a < 1.0:
                    terms[i] = -INFINITY
                else:
                    blown = True
                    break
                continue
            t = a * lp + (1.0 - a) * lq
            terms[i] = t
            if t > mx:
                mx = t
        if blown:
            res[k] = INFINITY
            continue
        if isinf(mx):
            res[k] = -INFINITY
            continue
        acc = 0.0
        for i in range(n):
            if not isinf(terms[i]):
                acc += exp(terms[i] - mx)
        res[k] = mx + log(acc)
    return out


cdef inline double _interp(double[::1] xs, double[::1] ys, double x, Py_ssize_t *hint):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t j = hint[0]
    if x <= xs[0]:
        return ys[0]
    if x >= xs[n - 1]:
        return ys[n - 1]
    while j < n - 2 and xs[j + 1] < x:
        j += 1
    hint[0] = j
    if xs[j + 1] == xs[j]:
        return ys[j + 1]
    return ys[j] + (ys[j + 1] - ys[j]) * (x - xs[j]) / (xs[j + 1] - xs[j])


def lorenz_margin(double[::1] xa, double[::1] ya, double[::1] xb, double[::1] yb):
    """Smallest f_a(x) - f_b(x) over every breakpoint of either curve."""
    cdef Py_ssize_t i
    cdef Py_ssize_t ha = 0, hb = 0
    cdef double worst = INFINITY, d
    for i in range(xa.shape[0]):
        d = ya[i] - _interp(xb, yb, xa[i], &hb)
        if d < worst:
            worst = d
    for i in range(xb.shape[0]):
        d = _interp(xa, ya, xb[i], &ha) - yb[i]
        if d < worst:
            worst = d
    return worst


def simplex_phase1(double[:, ::1] T, long[::1] basis, long max_iter, double tol):
    """Pivot a phase-1 tableau in place with Bland's rule.

    Rows ``0..m-1`` are constraints, row ``m`` holds reduced costs and the last
    column the right-hand side. Returns ``(status, iterations)`` with status 0
    at optimality and 1 when the iteration cap is hit.
    """
    cdef Py_ssize_t m = T.shape[0] - 1
    cdef Py_ssize_t ncol = T.shape[1]
    cdef Py_ssize_t nv = ncol - 1
    cdef Py_ssize_t i, j, r, c
    cdef long it = 0
    cdef double best, ratio, piv, f
    while True:
        c = -1
        for j in range(nv):
            if T[m, j] < -tol:
                c = j
                break
        if c < 0:
            return 0, it
        if it >= max_iter:
            return 1, it
        r = -1
        best = INFINITY
        for i in range(m):
            if T[i, c] > tol:
                ratio = T[i, nv] / T[i, c]
                if ratio < best:
                    best = ratio
        for i in range(m):
            if T[i, c] > tol and T[i, nv] / T[i, c] <= best + 1e-15:
                if r < 0 or basis[i] < basis[r]:
                    r = i
        if r < 0:
            # unbounded direction cannot occur in phase 1; treat as optimal
            return 0, it
        piv = T[r, c]
        for j in range(ncol):
            T[r, j] /= piv
        for i in range(m + 1):
            if i != r:
                f = T[i, c]
                if f != 0.0:
                    for j in range(ncol):
                        T[i, j] -= f * T[r, j]
        basis[r] = c
        it += 1
