"""Majorization, fine-graining, thermo-majorization curves, tramping, d-majorization.

``d_majorize_lp`` decides the existence of a stochastic map by linear
programming and is kept fully separate from the Lorenz-curve route so that
the two can check each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .divergences import alpha_grid, renyi_entropy
from .lp import INFEASIBLE, UNDECIDED, phase1
from .spectra import BlockSpectrum, EngineSpec, semi_gibbs

MAJ_TOL = 1e-10
LP_DIM_CAP = 64


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    """Piecewise-linear curve through ``(x, y)``, starting at the origin."""

    x: np.ndarray
    y: np.ndarray

    @property
    def points(self):
        return np.column_stack([self.x, self.y])

    def __call__(self, t):
        return np.interp(t, self.x, self.y)

    def simplified(self, tol: float = 1e-12) -> "LorenzCurve":
        """Drop breakpoints where the slope does not change."""
        keep = [0]
        for k in range(1, self.x.size - 1):
            i = keep[-1]
            dx0, dy0 = self.x[k] - self.x[i], self.y[k] - self.y[i]
            dx1, dy1 = self.x[k + 1] - self.x[k], self.y[k + 1] - self.y[k]
            if abs(dx0 * dy1 - dy0 * dx1) > tol * max(1.0, abs(dx0) + abs(dx1)):
                keep.append(k)
        keep.append(self.x.size - 1)
        idx = np.array(keep)
        return LorenzCurve(self.x[idx], self.y[idx])


@dataclass(frozen=True, eq=False)
class FineGrained:
    gamma: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True, eq=False)
class StochasticWitness:
    """Column-stochastic map together with how well it meets the constraints."""

    matrix: np.ndarray
    residual_p: float
    residual_q: float

    @property
    def residuals(self):
        return self.residual_p, self.residual_q


def _pad(p, p2):
    p = np.asarray(p, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    n = max(p.size, p2.size)
    return np.pad(p, (0, n - p.size)), np.pad(p2, (0, n - p2.size))


def majorizes(p, p2, tol: float = MAJ_TOL) -> bool:
    """True when p majorizes p2: sorted partial sums of p dominate those of p2."""
    p, p2 = _pad(p, p2)
    if abs(p.sum() - p2.sum()) > tol:
        return False
    a = np.cumsum(np.sort(p)[::-1])
    b = np.cumsum(np.sort(p2)[::-1])
    return bool(np.all(a >= b - tol))


def fine_grain(p, weights: Sequence[int]) -> FineGrained:
    """Split entry p_i into d_i equal parts p_i / d_i."""
    p = np.asarray(p, dtype=float)
    d = np.asarray(weights)
    if d.shape != p.shape:
        raise ValueError("weights must align with p")
    if not np.all(np.equal(np.mod(d, 1), 0)) or np.any(d < 1):
        raise ValueError("multiplicities must be positive integers")
    d = d.astype(np.int64)
    return FineGrained(np.repeat(p / d, d), d)


def lorenz_from(p, q, scale: float = 1.0) -> LorenzCurve:
    """Curve with points (scale * cumulative q, cumulative p), ordered by p/q."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    ratio = p / q
    order = np.argsort(-ratio, kind="stable")
    x = np.concatenate(([0.0], np.cumsum(q[order]) * scale))
    y = np.concatenate(([0.0], np.cumsum(p[order])))
    return LorenzCurve(x, y)


def thermo_lorenz_curve(s: BlockSpectrum, spec: EngineSpec) -> LorenzCurve:
    """Thermo-majorization curve; x accumulates Gibbs weights exp(-w), ending at Z1 Z2."""
    g = semi_gibbs(spec)
    return lorenz_from(s.p, g.q, float(np.exp(g.logZ)))


def curve_margin(a: LorenzCurve, b: LorenzCurve) -> float:
    """Smallest vertical gap curve_a - curve_b over all breakpoints."""
    return float(
        kernels.lorenz_margin(
            np.ascontiguousarray(a.x), np.ascontiguousarray(a.y),
            np.ascontiguousarray(b.x), np.ascontiguousarray(b.y),
        )
    )


def thermo_majorizes(a: BlockSpectrum, b: BlockSpectrum, spec_a: EngineSpec, spec_b: EngineSpec | None = None,
                     tol: float = MAJ_TOL) -> bool:
    """True when the curve of ``a`` lies on or above that of ``b`` everywhere.

    Both states must live on the same spec; extend Hamiltonian changes with a
    clock first.
    """
    if spec_b is not None and not spec_a.same_as(spec_b):
        raise ValueError("thermo-majorization needs a shared spec; clock-extend the transformation first")
    return curve_margin(thermo_lorenz_curve(a, spec_a), thermo_lorenz_curve(b, spec_a)) >= -tol


def d_majorize_lp(p, q, p2, q2, tol: float = 1e-9, max_iter: int | None = None):
    """Look for a column-stochastic L with L p = p2 and L q = q2.

    Returns ``(verdict, witness)`` where verdict is ``True``, ``False`` or the
    string ``"undecided"`` when the simplex hits its iteration cap.
    """
    p, q, p2, q2 = (np.asarray(v, dtype=float) for v in (p, q, p2, q2))
    n, n2 = p.size, p2.size
    if q.size != n or q2.size != n2:
        raise ValueError("p/q and p2/q2 must have matching lengths")
    if max(n, n2) > LP_DIM_CAP:
        raise ValueError(f"LP dimension cap {LP_DIM_CAP} exceeded")
    if np.any(q <= 0) or np.any(q2 <= 0):
        raise ValueError("reference distributions must have full support")
    # variable L[i, j] at position i * n + j
    rows = []
    rhs = []
    for j in range(n):
        r = np.zeros(n2 * n)
        r[j::n] = 1.0
        rows.append(r)
        rhs.append(1.0)
    for i in range(n2):
        r = np.zeros(n2 * n)
        r[i * n : (i + 1) * n] = p
        rows.append(r)
        rhs.append(p2[i])
    for i in range(n2):
        r = np.zeros(n2 * n)
        r[i * n : (i + 1) * n] = q
        rows.append(r)
        rhs.append(q2[i])
    res = phase1(np.array(rows), np.array(rhs), feas_tol=tol, max_iter=max_iter)
    if res.status == UNDECIDED:
        return UNDECIDED, None
    if res.status == INFEASIBLE:
        return False, None
    L = res.x.reshape(n2, n)
    L = L / L.sum(axis=0, keepdims=True)
    w = StochasticWitness(L, float(np.max(np.abs(L @ p - p2))), float(np.max(np.abs(L @ q - q2))))
    if max(w.residuals) > tol:
        # the solver claimed feasibility but the cleaned map misses the targets
        return UNDECIDED, None
    return True, w


def tramps(p, p2, grid=None, tol: float = 1e-9) -> str:
    """Catalytic majorization check through Renyi entropies.

    Returns ``"yes"`` when p2 has full support and H_a(p) <= H_a(p2) for all
    a on the signed grid; ``"yes-epsilon"`` when p2 lacks full support and the
    inequalities hold for a >= 0 (p then reaches arbitrarily close full-rank
    neighbours of p2); otherwise ``"no"``.
    """
    p, p2 = _pad(p, p2)
    full = bool(np.all(p2 > 0))
    if grid is None:
        grid = alpha_grid(signed=full)
    if not full:
        grid = np.asarray(grid)[np.asarray(grid) >= 0]
    for a in grid:
        h, h2 = renyi_entropy(p, a), renyi_entropy(p2, a)
        if h == -np.inf:
            continue
        if h > h2 + tol:
            return "no"
    return "yes" if full else "yes-epsilon"
