"""Renyi entropies and relative entropies, alpha-free-entropies, smoothing.

All quantities are in nats. Sums over probabilities run in the log domain so
that Gibbs weights with beta*E of order 100 do not underflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np
from scipy.special import logsumexp

from . import kernels
from .spectra import BlockSpectrum, DenseState, EngineSpec, mean_energies, semi_gibbs

GRID_POINTS = 120
GRID_LO = 1e-3
GRID_HI = 1e3
REFINE_RTOL = 1e-6


class AlphaTag(Enum):
    NEG_INFINITY = "NegInfinity"
    ZERO = "Zero"
    ONE = "One"
    POS_INFINITY = "PosInfinity"
    FINITE = "Finite"


@dataclass(frozen=True)
class AlphaValue:
    """An order alpha in [-inf, inf] with the limit points tagged explicitly."""

    tag: AlphaTag
    value: float | None = None

    def __post_init__(self):
        if self.tag is AlphaTag.FINITE:
            v = self.value
            if v is None or not math.isfinite(v) or v in (0.0, 1.0):
                raise ValueError(f"finite alpha must be finite and not 0 or 1, got {v}")
        elif self.value is not None:
            raise ValueError("only finite alphas carry a value")

    @classmethod
    def of(cls, a: "AlphaLike") -> "AlphaValue":
        if isinstance(a, AlphaValue):
            return a
        a = float(a)
        if math.isnan(a):
            raise ValueError("alpha must not be NaN")
        if a == math.inf:
            return cls(AlphaTag.POS_INFINITY)
        if a == -math.inf:
            return cls(AlphaTag.NEG_INFINITY)
        if a == 0.0:
            return cls(AlphaTag.ZERO)
        if a == 1.0:
            return cls(AlphaTag.ONE)
        return cls(AlphaTag.FINITE, a)

    def __float__(self):
        return {
            AlphaTag.NEG_INFINITY: -math.inf,
            AlphaTag.ZERO: 0.0,
            AlphaTag.ONE: 1.0,
            AlphaTag.POS_INFINITY: math.inf,
        }.get(self.tag, self.value)

    def __repr__(self):
        return f"AlphaValue({float(self)})"


AlphaLike = Union[AlphaValue, float, int]


def _logs(x):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log(np.clip(x, 0.0, None))


# ---------------------------------------------------------------- entropies


def renyi_entropy(p, a: AlphaLike) -> float:
    """Renyi alpha-entropy H_a(p) = sgn(a)/(1-a) log sum p_i^a.

    For a < 0 a zero entry sends the sum to infinity, so H_a = -inf, the value
    the a -> -inf limit log(p_min) also gives.
    """
    p = np.asarray(p, dtype=float)
    x = float(AlphaValue.of(a))
    pos = p[p > 0]
    if x == 1.0:
        return float(-np.sum(pos * np.log(pos)))
    if x == 0.0:
        return float(np.log(pos.size))
    if x == math.inf:
        return float(-np.log(pos.max()))
    if x == -math.inf:
        return -math.inf if pos.size < p.size else float(np.log(pos.min()))
    if x < 0 and pos.size < p.size:
        return -math.inf
    ls = float(logsumexp(x * np.log(pos)))
    return math.copysign(1.0, x) / (1.0 - x) * ls


NEAR_ONE = 0.5


def _near_one(logp, logq, alphas) -> np.ndarray | None:
    """Orders close to 1 without the cancellation in log(sum)/(a - 1).

    With L = log p - log q centred at its p-mean mu,
    D_a = mu + log1p(sum p expm1((a - 1)(L - mu))) / (a - 1), which is exact.
    Returns None when p is not dominated by q (the plain form is then stable).
    """
    zp = np.isneginf(logp)
    if np.any(~zp & np.isneginf(logq)):
        return None
    m = ~zp
    w = np.exp(logp[m])
    w = w / w.sum()
    L = logp[m] - logq[m]
    mu = float(np.dot(w, L))
    t = np.asarray(alphas, dtype=float) - 1.0
    inner = (w[None, :] * np.expm1(t[:, None] * (L - mu)[None, :])).sum(axis=1)
    return mu + np.log1p(inner) / t


def _divergence_from_logs(logp, logq, x: float) -> float:
    zp = np.isneginf(logp)
    zq = np.isneginf(logq)
    if x == 1.0:
        if np.any(~zp & zq):
            return math.inf
        m = ~zp
        return float(np.sum(np.exp(logp[m]) * (logp[m] - logq[m])))
    if x == 0.0:
        m = ~zp & ~zq
        if not np.any(m):
            return math.inf
        return float(-logsumexp(logq[m]))
    if x == math.inf:
        if np.any(~zp & zq):
            return math.inf
        m = ~zp
        return float(np.max(logp[m] - logq[m]))
    if x == -math.inf:
        return _divergence_from_logs(logq, logp, math.inf)
    if 0 < abs(x - 1.0) < NEAR_ONE:
        v = _near_one(logp, logq, [x])
        if v is not None:
            return float(v[0])
    ls = float(kernels.renyi_logsum_grid(logp, logq, np.array([x]))[0])
    if math.isinf(ls):
        return math.inf if ls > 0 else (math.inf if x < 1 else -math.inf)
    return math.copysign(1.0, x) / (x - 1.0) * ls


def renyi_relative_entropy(p, q, a: AlphaLike, logp=None, logq=None) -> float:
    """Renyi alpha-relative entropy D_a(p||q) with conventions 0/0 = 0, x/0 = inf.

    ``logp``/``logq`` may be supplied to avoid recomputing (or to keep the
    precision of) logarithms the caller already has.
    """
    logp = _logs(p) if logp is None else np.asarray(logp, dtype=float)
    logq = _logs(q) if logq is None else np.asarray(logq, dtype=float)
    if logp.shape != logq.shape:
        raise ValueError("p and q must have equal length")
    return _divergence_from_logs(logp, logq, float(AlphaValue.of(a)))


def divergence_grid(logp, logq, alphas) -> np.ndarray:
    """D_a(p||q) for every a in ``alphas``, vectorised over the finite orders."""
    logp = np.ascontiguousarray(logp, dtype=float)
    logq = np.ascontiguousarray(logq, dtype=float)
    alphas = np.asarray(alphas, dtype=float)
    out = np.empty(alphas.size)
    special = np.isin(alphas, (0.0, 1.0)) | np.isinf(alphas)
    for k in np.nonzero(special)[0]:
        out[k] = _divergence_from_logs(logp, logq, float(alphas[k]))
    fin = ~special
    if np.any(fin):
        a = np.ascontiguousarray(alphas[fin])
        ls = kernels.renyi_logsum_grid(logp, logq, a)
        with np.errstate(invalid="ignore"):
            vals = np.sign(a) / (a - 1.0) * ls
        vals[np.isposinf(ls)] = np.inf
        vals[np.isneginf(ls)] = np.inf
        out[fin] = vals
    near = fin & (np.abs(alphas - 1.0) < NEAR_ONE)
    if np.any(near):
        v = _near_one(logp, logq, alphas[near])
        if v is not None:
            out[near] = v
    return out


def alpha_free_entropy(s: BlockSpectrum, spec: EngineSpec, a: AlphaLike) -> float:
    """S_a = D_a(p || semi-Gibbs) - log Z1 - log Z2."""
    g = semi_gibbs(spec)
    return renyi_relative_entropy(s.p, g.q, a, logq=g.logq) - g.logZ


def helmholtz_free_entropy(s: BlockSpectrum, spec: EngineSpec) -> float:
    """beta1 <E1> + beta2 <E2> - H(p)."""
    e1, e2 = mean_energies(s.p, spec)
    return spec.beta1 * e1 + spec.beta2 * e2 - renyi_entropy(s.p, 1.0)


# ----------------------------------------------------------------- quantum

EIG_CLIP = 1e-10
SUPPORT_TOL = 1e-12


def _eig(m):
    vals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    if vals.min(initial=0.0) < -EIG_CLIP:
        raise ValueError("matrix has eigenvalue below -1e-10")
    return np.clip(vals, 0.0, None), vecs


def _mpow(vals, vecs, power, support):
    v = np.zeros_like(vals)
    v[support] = vals[support] ** power
    return (vecs * v) @ vecs.conj().T


def _as_matrix(x):
    return x.matrix if isinstance(x, DenseState) else np.asarray(x, dtype=complex)


def quantum_renyi_divergence(rho, sigma, a: AlphaLike) -> float:
    """Quantum Renyi divergence: Petz form below 1, sandwiched form from 1 up.

    a = 1 is the Umegaki relative entropy, a = inf the max-relative entropy
    and a = 0 the limit -log Tr(P_rho sigma) with P_rho the support projector.
    """
    r = _as_matrix(rho)
    s = _as_matrix(sigma)
    x = float(AlphaValue.of(a))
    if x < 0:
        raise ValueError("quantum divergence needs alpha >= 0")
    rv, rV = _eig(r)
    sv, sV = _eig(s)
    rsup = rv > SUPPORT_TOL
    ssup = sv > SUPPORT_TOL
    if x < 1.0:
        if x == 0.0:
            proj = rV[:, rsup] @ rV[:, rsup].conj().T
            tr = float(np.real(np.trace(proj @ s)))
        else:
            tr = float(np.real(np.trace(_mpow(rv, rV, x, rsup) @ _mpow(sv, sV, 1.0 - x, ssup))))
        if tr <= 0:
            return math.inf
        return math.log(tr) / (x - 1.0)
    kern = sV[:, ~ssup]
    if kern.shape[1] and np.max(np.abs(kern.conj().T @ r @ kern)) > 1e-10:
        return math.inf
    if x == 1.0:
        logr = _mpow(np.where(rsup, np.log(np.where(rsup, rv, 1.0)), 0.0), rV, 1.0, rsup)
        logs = _mpow(np.where(ssup, np.log(np.where(ssup, sv, 1.0)), 0.0), sV, 1.0, ssup)
        return float(np.real(np.trace(r @ (logr - logs))))
    if x == math.inf:
        half = _mpow(sv, sV, -0.5, ssup)
        m = half @ r @ half
        return math.log(float(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).max()))
    side = _mpow(sv, sV, (1.0 - x) / (2.0 * x), ssup)
    m = side @ r @ side
    mv = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    mv = mv[mv > 0]
    if mv.size == 0:
        return math.inf
    # log-domain sum: mv**x overflows for large x
    return float(logsumexp(x * np.log(mv))) / (x - 1.0)


# --------------------------------------------------------------- smoothing


def _check_eps(eps):
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def _ratio_order(p, q):
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(q > 0, p / np.where(q > 0, q, 1.0), np.where(p > 0, np.inf, 0.0))
    return r, np.argsort(-r, kind="stable")


def smoothed_dmin(p, q, eps: float) -> float:
    """-log min q(S) over index sets S with p(S) >= 1 - eps, built greedily by p/q."""
    _check_eps(eps)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    _, order = _ratio_order(p, q)
    cp = np.cumsum(p[order])
    k = int(np.searchsorted(cp, 1.0 - eps - 1e-12, side="left"))
    k = min(k, p.size - 1)
    mass = float(np.sum(q[order[: k + 1]]))
    return math.inf if mass <= 0 else -math.log(mass) + 0.0


def smoothed_dmax(p, q, eps: float) -> float:
    """log of the least lambda with min(p, lambda q) losing at most eps of mass.

    The smoothed candidate is sub-normalized: mass above lambda*q is removed
    from the largest ratios down, without redistribution.
    """
    _check_eps(eps)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    r, order = _ratio_order(p, q)
    inf_mass = float(p[np.isinf(r)].sum())
    if inf_mass > eps:
        return math.inf
    budget = eps - inf_mass
    fin = order[np.isfinite(r[order])]
    rs = r[fin]
    ps = p[fin]
    qs = q[fin]
    # removed(lam) = sum_{r_i > lam} (p_i - lam q_i); piecewise linear, decreasing
    cp = np.cumsum(ps)
    cq = np.cumsum(qs)
    for k in range(rs.size):
        lam_next = rs[k + 1] if k + 1 < rs.size else 0.0
        removed_next = cp[k] - lam_next * cq[k]
        if removed_next >= budget:
            lam = (cp[k] - budget) / cq[k]
            return math.log(max(lam, lam_next)) if max(lam, lam_next) > 0 else -math.inf
    return -math.inf


# ------------------------------------------------------------------ α scans


def alpha_grid(n: int = GRID_POINTS, signed: bool = False) -> np.ndarray:
    """Scan grid {0} u logspace(1e-3, 1e3, n) u {1} u {inf}, mirrored when signed."""
    pts = np.logspace(math.log10(GRID_LO), math.log10(GRID_HI), n)
    pos = np.unique(np.concatenate(([0.0, 1.0], pts, [math.inf])))
    if not signed:
        return pos
    fin = pos[(pos > 0) & np.isfinite(pos)]
    neg = -fin[::-1]
    return np.concatenate(([-math.inf], neg, pos))


@dataclass(frozen=True)
class ScanResult:
    """Extremum of a function of alpha found by grid plus refinement."""

    value: float
    alpha: float
    grid: np.ndarray
    values: np.ndarray


def _golden(f, lo, hi, use_log, sign):
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    tr = (lambda t: math.exp(t)) if use_log else (lambda t: t)
    a, b = (math.log(lo), math.log(hi)) if use_log else (lo, hi)
    g = lambda t: sign * f(tr(t))
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = g(c), g(d)
    for _ in range(200):
        if use_log:
            if b - a <= REFINE_RTOL:
                break
        elif b - a <= REFINE_RTOL * max(b, 1e-300):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = g(d)
    t = c if fc <= fd else d
    return tr(t), sign * min(fc, fd)


def scan_alpha(
    f_grid: Callable[[np.ndarray], np.ndarray],
    f_point: Callable[[float], float],
    grid: np.ndarray,
    mode: str = "min",
    values: np.ndarray | None = None,
) -> ScanResult:
    """Extremize f over alpha: evaluate on the grid, refine the best bracket.

    Limits at alpha in {0, +-inf} are taken from the exact formulas; interior
    grid optima are refined by golden-section search between neighbouring
    grid points until |d alpha| / alpha <= 1e-6.
    """
    sign = 1.0 if mode == "min" else -1.0
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(f_grid(grid) if values is None else values, dtype=float)
    key = np.where(np.isnan(vals), np.inf, sign * vals)
    k = int(np.argmin(key))
    best_a, best_v = float(grid[k]), float(vals[k])
    finite = np.isfinite(grid)
    if finite[k] and np.isfinite(best_v):
        lo = grid[k - 1] if k > 0 and finite[k - 1] else grid[k]
        hi = grid[k + 1] if k + 1 < grid.size and finite[k + 1] else grid[k]
        if (lo < 0) != (hi < 0) and lo != 0 and hi != 0:
            lo, hi = (lo, grid[k]) if grid[k] <= 0 else (grid[k], hi)
        if hi > lo:
            if lo > 0:
                a, v = _golden(f_point, lo, hi, True, sign)
            elif hi < 0:
                a, v = _golden(lambda t: f_point(-t), -hi, -lo, True, sign)
                a = -a
            else:
                a, v = _golden(f_point, lo, hi, False, sign)
            if np.isfinite(v) and sign * v < sign * best_v:
                best_a, best_v = a, v
    return ScanResult(best_v, best_a, grid, vals)
