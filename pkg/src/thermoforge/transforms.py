"""Feasibility of state transformations between two baths.

A transformation maps an initial block-diagonal state on one spec to a final
state on another spec with the same baths. Catalytic feasibility is decided
by the ordering of all alpha-free-entropies; non-catalytic feasibility by
thermo-majorization, after attaching a two-level clock per subsystem when the
Hamiltonians change.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .divergences import ScanResult, alpha_grid, divergence_grid, renyi_relative_entropy, scan_alpha
from .majorization import thermo_majorizes
from .spectra import BlockSpectrum, EnergyLevels, EngineSpec, semi_gibbs, weighted_spectrum

FEAS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Transformation:
    initial: BlockSpectrum
    spec_initial: EngineSpec
    final: BlockSpectrum
    spec_final: EngineSpec

    def __post_init__(self):
        if self.initial.p.size != self.spec_initial.dim or self.final.p.size != self.spec_final.dim:
            raise ValueError("state dimension does not match its spec")
        if (abs(self.spec_initial.beta1 - self.spec_final.beta1) > 1e-15
                or abs(self.spec_initial.beta2 - self.spec_final.beta2) > 1e-15):
            raise ValueError("initial and final specs must share their baths")

    @classmethod
    def build(cls, p, spec, p2, spec2=None) -> "Transformation":
        spec2 = spec if spec2 is None else spec2
        return cls(
            BlockSpectrum(np.asarray(p, dtype=float), weighted_spectrum(spec)), spec,
            BlockSpectrum(np.asarray(p2, dtype=float), weighted_spectrum(spec2)), spec2,
        )

    @property
    def same_hamiltonian(self) -> bool:
        return self.spec_initial.same_as(self.spec_final)

    def reversed(self) -> "Transformation":
        return Transformation(self.final, self.spec_final, self.initial, self.spec_initial)


@dataclass(frozen=True, eq=False)
class ClockExtension:
    """Both endpoints embedded in one spec: initial at clock (0,0), final at (1,1)."""

    initial: BlockSpectrum
    final: BlockSpectrum
    spec: EngineSpec


def clock_extend(t: Transformation) -> ClockExtension:
    """Attach a two-level clock to each subsystem.

    Subsystem x of the extended spec has levels H_x (clock 0) followed by
    H'_x (clock 1), so its dimension is d_x + d'_x.
    """
    a, b = t.spec_initial, t.spec_final
    h1 = np.concatenate([a.h1.levels, b.h1.levels])
    h2 = np.concatenate([a.h2.levels, b.h2.levels])
    D1, D2 = h1.size, h2.size
    spec = EngineSpec(EnergyLevels(h1), EnergyLevels(h2), a.baths, max(a.cap, D1 * D2))
    pi = np.zeros((D1, D2))
    pi[: a.d1, : a.d2] = t.initial.p.reshape(a.d1, a.d2)
    pf = np.zeros((D1, D2))
    pf[a.d1 :, a.d2 :] = t.final.p.reshape(b.d1, b.d2)
    ws = weighted_spectrum(spec)
    return ClockExtension(BlockSpectrum(pi.ravel(), ws), BlockSpectrum(pf.ravel(), ws), spec)


# ------------------------------------------------------------- α-scan core


def _logs(p):
    with np.errstate(divide="ignore"):
        return np.log(p)


def free_entropy_profile(t: Transformation):
    """Return (f_grid, f_point) evaluating alpha -> S_a(initial) - S_a(final)."""
    gi, gf = semi_gibbs(t.spec_initial), semi_gibbs(t.spec_final)
    lpi, lpf = _logs(t.initial.p), _logs(t.final.p)
    shift = gf.logZ - gi.logZ

    def f_grid(alphas):
        di = divergence_grid(lpi, gi.logq, alphas)
        df = divergence_grid(lpf, gf.logq, alphas)
        return _diff(di, df) + shift

    def f_point(a):
        di = renyi_relative_entropy(None, None, a, logp=lpi, logq=gi.logq)
        df = renyi_relative_entropy(None, None, a, logp=lpf, logq=gf.logq)
        return float(_diff(np.array([di]), np.array([df]))[0]) + shift

    return f_grid, f_point


def _diff(di, df):
    # inf - inf has no meaning here; NaN is skipped by the scan
    with np.errstate(invalid="ignore"):
        return np.asarray(di, dtype=float) - np.asarray(df, dtype=float)


@dataclass(frozen=True)
class DistanceResult:
    """Infimum and supremum over alpha >= 0 of the free-entropy drop."""

    distance: float
    alpha: float
    sup: float
    sup_alpha: float
    scan: ScanResult = field(repr=False, compare=False, default=None)


def free_entropy_distance(t: Transformation, grid=None) -> DistanceResult:
    """S_d = inf over alpha >= 0 of S_a(initial) - S_a(final), plus the supremum."""
    grid = alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    grid = grid[grid >= 0]
    f_grid, f_point = free_entropy_profile(t)
    lo = scan_alpha(f_grid, f_point, grid, "min")
    hi = scan_alpha(f_grid, f_point, grid, "max", values=lo.values)
    return DistanceResult(lo.value, lo.alpha, hi.value, hi.alpha, lo)


def cslto_feasible(t: Transformation, tol: float = FEAS_TOL, grid=None):
    """Catalytic verdict from the alpha >= 0 free-entropies.

    Returns ``(feasible, alpha)`` with the most violating alpha when infeasible.
    """
    d = free_entropy_distance(t, grid)
    if d.distance >= -tol:
        return True, None
    return False, d.alpha


def signed_grid(grid):
    """Mirror the positive part of a grid onto negative orders, adding -inf."""
    g = np.asarray(grid, dtype=float)
    pos = np.unique(g[g >= 0])
    fin = pos[(pos > 0) & np.isfinite(pos)]
    return np.concatenate(([-math.inf], -fin[::-1], pos))


def _full_support(t: Transformation) -> bool:
    return bool(np.all(t.initial.p > 0) and np.all(t.final.p > 0))


def cslto_feasible_signed(t: Transformation, tol: float = FEAS_TOL, grid=None) -> bool:
    """Catalytic verdict including negative alpha for full-support states.

    With a Hamiltonian change the clock-extended states never have full
    support, and without full support the alpha >= 0 family already decides,
    so both cases defer to :func:`cslto_feasible`.
    """
    if not (_full_support(t) and t.same_hamiltonian):
        return cslto_feasible(t, tol, grid)[0]
    g = alpha_grid(signed=True) if grid is None else signed_grid(grid)
    f_grid, f_point = free_entropy_profile(t)
    res = scan_alpha(f_grid, f_point, g, "min")
    return bool(res.value >= -tol)


def slto_feasible(t: Transformation, tol: float = 1e-10) -> bool:
    """Non-catalytic verdict by thermo-majorization."""
    if t.same_hamiltonian:
        return thermo_majorizes(t.initial, t.final, t.spec_initial, tol=tol)
    ext = clock_extend(t)
    return thermo_majorizes(ext.initial, ext.final, ext.spec, tol=tol)


# ------------------------------------------------------------------- work


@dataclass(frozen=True)
class SplitRule:
    """How a free-entropy budget is shared between the two batteries.

    kind is ``"bath1"``, ``"bath2"``, ``"user"`` (fixed w1) or ``"alpha1"``
    (engine default: w1 from the alpha = 1 work).
    """

    kind: str = "bath1"
    w1: float | None = None

    def __post_init__(self):
        if self.kind not in ("bath1", "bath2", "user", "alpha1"):
            raise ValueError(f"unknown split rule {self.kind!r}")
        if self.kind == "user" and (self.w1 is None or not math.isfinite(self.w1)):
            raise ValueError("user split needs a finite w1")

    @classmethod
    def parse(cls, text: str) -> "SplitRule":
        text = text.strip()
        if text.startswith("w1="):
            return cls("user", float(text[3:]))
        return cls(text)

    def label(self) -> str:
        return f"w1={self.w1!r}" if self.kind == "user" else self.kind


def split_budget(budget: float, rule: SplitRule, beta1: float, beta2: float, w1: float | None = None):
    """Return (w1, w2) with beta1*w1 + beta2*w2 = budget under ``rule``."""
    if rule.kind == "bath1":
        return budget / beta1, 0.0
    if rule.kind == "bath2":
        return 0.0, budget / beta2
    w1 = rule.w1 if w1 is None else w1
    if w1 is None:
        raise ValueError(f"split rule {rule.kind} needs a w1 value")
    return w1, (budget - beta1 * w1) / beta2


@dataclass(frozen=True)
class WorkSplit:
    w1: float
    w2: float
    w_ext: float
    split_rule: str
    cost_w1: float
    cost_w2: float
    w_cost: float
    flagged: bool = False


def work_quantities(t: Transformation, split: SplitRule | str = "bath1", distance: DistanceResult | None = None) -> WorkSplit:
    """Convert the guaranteed budget S_d (and the cost sup) into battery energies."""
    rule = SplitRule.parse(split) if isinstance(split, str) else split
    if rule.kind == "alpha1":
        raise ValueError("the alpha1 split is only defined for engine cycles")
    d = free_entropy_distance(t) if distance is None else distance
    b1, b2 = t.spec_initial.beta1, t.spec_initial.beta2
    w1, w2 = split_budget(d.distance, rule, b1, b2)
    c1, c2 = split_budget(d.sup, rule, b1, b2)
    flagged = rule.kind == "user" and (w1 <= 0 or w2 > 0)
    return WorkSplit(w1, w2, w1 + w2, rule.label(), c1, c2, c1 + c2, flagged)


def distillable_and_formation(s: BlockSpectrum, spec: EngineSpec):
    """(D_0, D_inf) of the state relative to the semi-Gibbs state."""
    g = semi_gibbs(spec)
    lp = _logs(s.p)
    return (renyi_relative_entropy(None, None, 0.0, logp=lp, logq=g.logq),
            renyi_relative_entropy(None, None, math.inf, logp=lp, logq=g.logq))


# ----------------------------------------------------------------- report


@dataclass(frozen=True)
class TransformReport:
    feasible: bool
    catalytic: bool
    feasible_cslto: bool
    violating_alpha: Optional[float]
    feasible_slto: bool
    feasible_signed: Optional[bool]
    s_distance: float
    minimizing_alpha: float
    s_cost: float
    maximizing_alpha: float
    distillable: float
    formation: float
    work: WorkSplit
    margin: float
    marginal: bool

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["work"] = dict(self.work.__dict__)
        return d


def transform_report(t: Transformation, catalytic: bool = True, signed: bool = False, grid=None,
                     tol: float = FEAS_TOL, split: SplitRule | str = "bath1") -> TransformReport:
    """Every verdict and quantity for one transformation."""
    d = free_entropy_distance(t, grid)
    feas_c = d.distance >= -tol
    feas_s = slto_feasible(t)
    feas_signed = cslto_feasible_signed(t, tol, grid) if signed else None
    if catalytic:
        feasible = bool(feas_signed) if signed else bool(feas_c)
    else:
        feasible = bool(feas_s)
    dist, form = distillable_and_formation(t.initial, t.spec_initial)
    return TransformReport(
        feasible=feasible,
        catalytic=catalytic,
        feasible_cslto=bool(feas_c),
        violating_alpha=None if feas_c else d.alpha,
        feasible_slto=bool(feas_s),
        feasible_signed=feas_signed,
        s_distance=d.distance,
        minimizing_alpha=d.alpha,
        s_cost=d.sup,
        maximizing_alpha=d.sup_alpha,
        distillable=dist,
        formation=form,
        work=work_quantities(t, split, d),
        margin=d.distance,
        marginal=abs(d.distance) <= tol,
    )
