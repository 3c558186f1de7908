"""Hamiltonians, bath pairs, semi-Gibbs states and weighted-energy blocks.

States of the bipartite system live on product indices ``k = i * d2 + j``
where ``i`` labels a level of the first subsystem and ``j`` one of the second.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

BLOCK_TOL = 1e-9
DEFAULT_DIM_CAP = 4096


@dataclass(frozen=True, eq=False)
class EnergyLevels:
    """Eigenvalues of a subsystem Hamiltonian, shifted so the minimum is zero."""

    levels: np.ndarray

    def __init__(self, levels: Sequence[float]):
        arr = np.asarray(levels, dtype=float).ravel()
        if arr.size == 0:
            raise ValueError("energy levels must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise ValueError("energy levels must be finite")
        arr = arr - arr.min()
        arr.setflags(write=False)
        object.__setattr__(self, "levels", arr)

    def __len__(self):
        return self.levels.size

    def gibbs(self, beta: float):
        """Return (probabilities, log-probabilities, log Z) at inverse temperature beta."""
        logw = -beta * self.levels
        logz = float(logsumexp(logw))
        logg = logw - logz
        return np.exp(logg), logg, logz


@dataclass(frozen=True)
class BathPair:
    beta1: float
    beta2: float

    def __post_init__(self):
        for name in ("beta1", "beta2"):
            b = getattr(self, name)
            if not (np.isfinite(b) and b > 0):
                raise ValueError(f"{name} must be a positive finite number, got {b}")


@dataclass(frozen=True, eq=False)
class EngineSpec:
    """Two non-interacting subsystems, each attached to its own bath."""

    h1: EnergyLevels
    h2: EnergyLevels
    baths: BathPair
    cap: int = DEFAULT_DIM_CAP

    def __post_init__(self):
        if not isinstance(self.h1, EnergyLevels):
            object.__setattr__(self, "h1", EnergyLevels(self.h1))
        if not isinstance(self.h2, EnergyLevels):
            object.__setattr__(self, "h2", EnergyLevels(self.h2))
        if self.dim > self.cap:
            raise ValueError(f"joint dimension {self.dim} exceeds cap {self.cap}")

    @classmethod
    def from_lists(cls, h1, h2, beta1, beta2, cap=DEFAULT_DIM_CAP):
        return cls(EnergyLevels(h1), EnergyLevels(h2), BathPair(float(beta1), float(beta2)), cap)

    @property
    def d1(self) -> int:
        return len(self.h1)

    @property
    def d2(self) -> int:
        return len(self.h2)

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    @property
    def beta1(self) -> float:
        return self.baths.beta1

    @property
    def beta2(self) -> float:
        return self.baths.beta2

    def same_as(self, other: "EngineSpec", tol: float = 1e-12) -> bool:
        """True when both specs describe the same levels and baths."""
        return (
            self.d1 == other.d1
            and self.d2 == other.d2
            and abs(self.beta1 - other.beta1) <= tol
            and abs(self.beta2 - other.beta2) <= tol
            and np.allclose(self.h1.levels, other.h1.levels, rtol=0, atol=tol)
            and np.allclose(self.h2.levels, other.h2.levels, rtol=0, atol=tol)
        )

    def swapped(self) -> "EngineSpec":
        """Spec with the two subsystem Hamiltonians exchanged, baths kept."""
        return EngineSpec(self.h2, self.h1, self.baths, self.cap)


@dataclass(frozen=True, eq=False)
class WeightedSpectrum:
    """Dimensionless weighted energies and their degenerate blocks."""

    w: np.ndarray
    blocks: tuple
    block_of: np.ndarray

    @property
    def dim(self) -> int:
        return self.w.size


@dataclass(frozen=True, eq=False)
class SemiGibbs:
    q: np.ndarray
    logq: np.ndarray
    logZ1: float
    logZ2: float

    @property
    def logZ(self) -> float:
        return self.logZ1 + self.logZ2


@dataclass(frozen=True, eq=False)
class BlockSpectrum:
    """Populations of a block-diagonal state over product indices."""

    p: np.ndarray
    weighted: WeightedSpectrum | None = field(default=None)

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).ravel()
        if np.any(p < -1e-12) or not np.all(np.isfinite(p)):
            raise ValueError("populations must be finite and non-negative")
        if abs(p.sum() - 1.0) > 1e-9:
            raise ValueError(f"populations must sum to 1, got {p.sum()!r}")
        p = np.clip(p, 0.0, None)
        p = p / p.sum()
        if self.weighted is not None and self.weighted.dim != p.size:
            raise ValueError("population vector does not match the weighted spectrum")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True, eq=False)
class DenseState:
    """Density matrix in the product energy eigenbasis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > 1e-10:
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "matrix", 0.5 * (m + m.conj().T))

    @classmethod
    def diagonal(cls, p) -> "DenseState":
        return cls(np.diag(np.asarray(p, dtype=complex)))

    @classmethod
    def pure(cls, psi) -> "DenseState":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def weighted_spectrum(spec: EngineSpec, tol: float = BLOCK_TOL) -> WeightedSpectrum:
    """Weighted energies beta1*E_i + beta2*E_j grouped into degenerate blocks.

    A block is a run of sorted energies lying within ``tol`` of the block's
    smallest member.
    """
    w = (spec.beta1 * spec.h1.levels[:, None] + spec.beta2 * spec.h2.levels[None, :]).ravel()
    order = np.argsort(w, kind="stable")
    block_of = np.empty(w.size, dtype=np.int64)
    blocks = []
    current = [int(order[0])]
    start = w[order[0]]
    for k in order[1:]:
        if w[k] - start <= tol:
            current.append(int(k))
        else:
            blocks.append(tuple(sorted(current)))
            current = [int(k)]
            start = w[k]
    blocks.append(tuple(sorted(current)))
    blocks.sort(key=lambda b: b[0])
    for b_idx, b in enumerate(blocks):
        block_of[list(b)] = b_idx
    w.setflags(write=False)
    block_of.setflags(write=False)
    return WeightedSpectrum(w, tuple(blocks), block_of)


def semi_gibbs(spec: EngineSpec) -> SemiGibbs:
    """Product of the two local Gibbs states."""
    _, lg1, logz1 = spec.h1.gibbs(spec.beta1)
    _, lg2, logz2 = spec.h2.gibbs(spec.beta2)
    logq = (lg1[:, None] + lg2[None, :]).ravel()
    return SemiGibbs(np.exp(logq), logq, logz1, logz2)


def block_spectrum_of(p, spec: EngineSpec) -> BlockSpectrum:
    """Wrap populations on ``spec`` as a BlockSpectrum."""
    ws = weighted_spectrum(spec)
    return BlockSpectrum(np.asarray(p, dtype=float), ws)


def _check_dim(rho: DenseState, w: WeightedSpectrum):
    if rho.dim != w.dim:
        raise ValueError(f"state dimension {rho.dim} does not match spectrum dimension {w.dim}")


def block_dephase(rho: DenseState, w: WeightedSpectrum) -> DenseState:
    """Remove all coherence between different weighted-energy blocks."""
    _check_dim(rho, w)
    mask = w.block_of[:, None] == w.block_of[None, :]
    return DenseState(np.where(mask, rho.matrix, 0.0))


def off_block_norm(rho: DenseState, w: WeightedSpectrum) -> float:
    """Largest absolute matrix element connecting different blocks."""
    _check_dim(rho, w)
    mask = w.block_of[:, None] != w.block_of[None, :]
    return float(np.max(np.abs(rho.matrix[mask]), initial=0.0))


def block_spectrum(rho: DenseState, w: WeightedSpectrum, tol: float = BLOCK_TOL) -> BlockSpectrum:
    """Diagonalize a block-diagonal state inside each degenerate block.

    Eigenvalues of each block are written in descending order onto the
    block's product indices.

    Raises
    ------
    ValueError
        If ``rho`` has coherence between blocks larger than ``tol``.
    """
    off = off_block_norm(rho, w)
    if off > tol:
        raise ValueError(
            f"state has inter-block coherence {off:.3e} > {tol:.0e}; dephase it first "
            "(only the block-diagonal part is then covered)"
        )
    p = np.empty(w.dim)
    for b in w.blocks:
        idx = list(b)
        if len(idx) == 1:
            p[idx[0]] = rho.matrix[idx[0], idx[0]].real
        else:
            sub = rho.matrix[np.ix_(idx, idx)]
            p[idx] = np.sort(np.linalg.eigvalsh(sub))[::-1]
    p = np.clip(p, 0.0, None)
    return BlockSpectrum(p / p.sum(), w)


def marginals(p, d1: int, d2: int):
    """Marginal populations of both subsystems."""
    m = np.asarray(p, dtype=float).reshape(d1, d2)
    return m.sum(axis=1), m.sum(axis=0)


def mean_energies(p, spec: EngineSpec):
    """Marginal mean energies <E1>, <E2>."""
    p1, p2 = marginals(p, spec.d1, spec.d2)
    return float(p1 @ spec.h1.levels), float(p2 @ spec.h2.levels)


def is_product(p, d1: int, d2: int, tol: float = 1e-10) -> bool:
    p1, p2 = marginals(p, d1, d2)
    return bool(np.max(np.abs(np.asarray(p).reshape(d1, d2) - np.outer(p1, p2))) <= tol)


def swap_populations(p, d1: int, d2: int):
    """Populations after exchanging the two subsystems."""
    return np.asarray(p, dtype=float).reshape(d1, d2).T.ravel().copy()


def compose_specs(a: EngineSpec, b: EngineSpec) -> EngineSpec:
    """Spec of two independent copies: subsystem x of the result is a_x (x) b_x."""
    if abs(a.beta1 - b.beta1) > 1e-15 or abs(a.beta2 - b.beta2) > 1e-15:
        raise ValueError("composed specs must share their baths")
    h1 = (a.h1.levels[:, None] + b.h1.levels[None, :]).ravel()
    h2 = (a.h2.levels[:, None] + b.h2.levels[None, :]).ravel()
    return EngineSpec(EnergyLevels(h1), EnergyLevels(h2), a.baths, max(a.cap, b.cap, a.dim * b.dim))


def compose_populations(pa, a: EngineSpec, pb, b: EngineSpec):
    """Populations of pa (x) pb laid out on ``compose_specs(a, b)`` indices."""
    t = np.einsum("ij,kl->ikjl", np.asarray(pa).reshape(a.d1, a.d2), np.asarray(pb).reshape(b.d1, b.d2))
    return t.reshape(a.d1 * b.d1 * a.d2 * b.d2)
