"""Asymmetry of a state with respect to weighted-time translations.

A_a(rho) = D_a(rho || dephase(rho)) vanishes exactly on block-diagonal
states and cannot grow under the engine's allowed operations, which gives
necessary conditions for transformations of coherent states.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .divergences import alpha_grid, quantum_renyi_divergence
from .spectra import DenseState, EngineSpec, block_dephase, off_block_norm, weighted_spectrum

MONOTONE_ALPHA_MAX = 2.0
ZERO_TOL = 1e-10


def asymmetry(rho: DenseState, spec: EngineSpec, a) -> float:
    """A_a(rho) for a >= 0."""
    if float(a) < 0:
        raise ValueError("asymmetry needs alpha >= 0")
    ws = weighted_spectrum(spec)
    if off_block_norm(rho, ws) <= ZERO_TOL:
        return 0.0
    return max(quantum_renyi_divergence(rho, block_dephase(rho, ws), a), 0.0)


@dataclass(frozen=True, eq=False)
class AsymmetryReport:
    alpha: np.ndarray
    values: np.ndarray
    informational: np.ndarray
    dephased: DenseState


def asymmetry_table(rho: DenseState, spec: EngineSpec, grid=None) -> AsymmetryReport:
    """A_a over a grid; orders above 2 are flagged informational."""
    grid = alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    grid = grid[grid >= 0]
    vals = np.array([asymmetry(rho, spec, a) for a in grid])
    return AsymmetryReport(grid, vals, grid > MONOTONE_ALPHA_MAX, block_dephase(rho, weighted_spectrum(spec)))


@dataclass(frozen=True, eq=False)
class AsymmetryCheck:
    """Necessary-only verdict: passing it does not imply feasibility."""

    holds: bool
    witness_alpha: float | None
    alpha: np.ndarray
    initial: np.ndarray
    final: np.ndarray
    necessary_only: bool = True


def asymmetry_necessary(rho: DenseState, spec: EngineSpec, sigma: DenseState, spec_final: EngineSpec | None = None,
                        grid=None, tol: float = 1e-9) -> AsymmetryCheck:
    """Check A_a(initial) >= A_a(final) for 0 <= a <= 2."""
    spec_final = spec if spec_final is None else spec_final
    grid = alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    grid = grid[(grid >= 0) & (grid <= MONOTONE_ALPHA_MAX)]
    ai = np.array([asymmetry(rho, spec, a) for a in grid])
    af = np.array([asymmetry(sigma, spec_final, a) for a in grid])
    gap = ai - af
    k = int(np.argmin(gap))
    ok = bool(gap[k] >= -tol)
    return AsymmetryCheck(ok, None if ok else float(grid[k]), grid, ai, af)
