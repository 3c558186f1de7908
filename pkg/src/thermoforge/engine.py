"""One-step heat engine: a SWAP of the two subsystems with exchanged Hamiltonians.

Subsystem 1 sits at the hot bath (beta1) and subsystem 2 at the cold bath
(beta2 > beta1). Works are battery energies: W > 0 is stored, W < 0 spent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .divergences import alpha_grid, divergence_grid, renyi_relative_entropy, scan_alpha
from .spectra import (
    BlockSpectrum, DenseState, EngineSpec, block_spectrum, is_product, marginals, mean_energies,
    swap_populations, weighted_spectrum, block_dephase,
)
from .transforms import (
    FEAS_TOL, DistanceResult, SplitRule, Transformation, free_entropy_distance, slto_feasible,
)


def _as_block(state, spec: EngineSpec) -> BlockSpectrum:
    ws = weighted_spectrum(spec)
    if isinstance(state, BlockSpectrum):
        return BlockSpectrum(state.p, ws)
    if isinstance(state, DenseState):
        return block_spectrum(block_dephase(state, ws), ws)
    return BlockSpectrum(np.asarray(state, dtype=float), ws)


def one_step_cycle(state, spec: EngineSpec) -> Transformation:
    """Transformation (rho, H1 + H2) -> (SWAP rho, H2 + H1)."""
    if not spec.beta1 < spec.beta2:
        raise ValueError(f"engine mode needs beta1 < beta2, got {spec.beta1} >= {spec.beta2}")
    s = _as_block(state, spec)
    final_spec = spec.swapped()
    p2 = swap_populations(s.p, spec.d1, spec.d2)
    return Transformation(s, spec, BlockSpectrum(p2, weighted_spectrum(final_spec)), final_spec)


def engine_spontaneous(cycle: Transformation, catalytic: bool = True, tol: float = FEAS_TOL) -> bool:
    """Whether the cycle runs without external work."""
    if catalytic:
        return free_entropy_distance(cycle).distance >= -tol
    return slto_feasible(cycle)


# --------------------------------------------------------------- α-works


@dataclass(frozen=True, eq=False)
class AlphaWorkTable:
    alpha: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    w_ext: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray

    def rows(self):
        return list(zip(*(getattr(self, k).tolist() for k in ("alpha", "w1", "w2", "w_ext", "eta1", "eta2"))))


class _LocalWork:
    """alpha -> beta_x * W_x(alpha) for one bath, from local free-entropies."""

    def __init__(self, r, hr, s, hs, beta):
        self.beta = beta
        with np.errstate(divide="ignore"):
            self.lr, self.ls = np.log(r), np.log(s)
        gr = hr.gibbs(beta)
        gs = hs.gibbs(beta)
        self.lgr, self.lgs = gr[1], gs[1]
        self.shift = gs[2] - gr[2]

    def grid(self, alphas):
        return divergence_grid(self.lr, self.lgr, alphas) - divergence_grid(self.ls, self.lgs, alphas) + self.shift

    def point(self, a):
        return (renyi_relative_entropy(None, None, a, logp=self.lr, logq=self.lgr)
                - renyi_relative_entropy(None, None, a, logp=self.ls, logq=self.lgs) + self.shift)


def _local_works(cycle: Transformation):
    spec = cycle.spec_initial
    if not is_product(cycle.initial.p, spec.d1, spec.d2):
        raise ValueError("alpha-works need a product input state")
    rho, sigma = marginals(cycle.initial.p, spec.d1, spec.d2)
    hot = _LocalWork(rho, spec.h1, sigma, spec.h2, spec.beta1)
    cold = _LocalWork(sigma, spec.h2, rho, spec.h1, spec.beta2)
    return hot, cold


def _ratio(num, den):
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    out = np.full(np.broadcast(num, den).shape, np.nan)
    ok = den != 0
    np.divide(num, den, out=out, where=ok)
    return out


def alpha_works(cycle: Transformation, grid=None) -> AlphaWorkTable:
    """Per-bath alpha-works of a product input rho (x) sigma.

    beta1 W1(a) = S_a(rho, g1) - S_a(sigma, g1') and
    beta2 W2(a) = S_a(sigma, g2) - S_a(rho, g2'), where g1' is the hot-bath
    Gibbs state of H2 and g2' the cold-bath Gibbs state of H1.
    """
    grid = alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    grid = grid[grid >= 0]
    hot, cold = _local_works(cycle)
    w1 = hot.grid(grid) / hot.beta
    w2 = cold.grid(grid) / cold.beta
    wext = w1 + w2
    eta1 = np.where(w1 > 0, _ratio(wext, w1), np.nan)
    eta2 = np.where(w2 < 0, _ratio(wext, np.abs(w2)), np.nan)
    return AlphaWorkTable(grid, w1, w2, wext, eta1, eta2)


@dataclass(frozen=True)
class LocalComparison:
    """Local thermal operations (each bath on its own) against the matched SLTO split."""

    w1_bar: float
    w2_bar: float
    w_ext_bar: float
    eta1_bar: Optional[float]
    eta2_bar: Optional[float]
    w2_sup: float
    w1: float
    w2: float
    w_ext: float
    eta1: Optional[float]
    eta2: Optional[float]


def _eff(num, den, ok):
    return float(num / den) if ok and den != 0 else None


def local_to_comparison(cycle: Transformation, budget: float, grid=None) -> LocalComparison:
    """Guaranteed works when each bath acts alone, against the joint budget.

    The hot bath alone guarantees inf_a W1(a). The cold bath alone needs the
    worst case of its own drop, inf_a W2(a) (most negative). The joint
    operation is compared on the split with the same hot-bath work,
    W2 = (budget - beta1 * W1_bar) / beta2.
    """
    grid = alpha_grid() if grid is None else np.asarray(grid, dtype=float)
    grid = grid[grid >= 0]
    hot, cold = _local_works(cycle)
    a = scan_alpha(hot.grid, hot.point, grid, "min")
    b = scan_alpha(cold.grid, cold.point, grid, "min")
    bsup = scan_alpha(cold.grid, cold.point, grid, "max", values=b.values)
    b1, b2 = hot.beta, cold.beta
    w1b, w2b = a.value / b1, b.value / b2
    wextb = w1b + w2b
    w2 = (budget - b1 * w1b) / b2
    wext = w1b + w2
    return LocalComparison(
        w1b, w2b, wextb, _eff(wextb, w1b, w1b > 0), _eff(wextb, abs(w2b), w2b < 0), bsup.value / b2,
        w1b, w2, wext, _eff(wext, w1b, w1b > 0), _eff(wext, abs(w2), w2 < 0),
    )


# ------------------------------------------------------------ statements


@dataclass(frozen=True)
class Statement:
    name: str
    holds: bool
    margin: float
    detail: str = ""


@dataclass(frozen=True)
class Statements:
    w1: float
    w2: float
    w_ext: float
    eta1: Optional[float]
    eta2: Optional[float]
    carnot_identity_residual: Optional[float]
    items: tuple

    def all_hold(self) -> bool:
        return all(s.holds for s in self.items)


def default_w1(cycle: Transformation, budget: float) -> float:
    """Hot-bath work used when the caller fixes no split.

    Product inputs use the alpha = 1 work; correlated inputs use 2*budget/beta1
    so the cold-bath share is negative. If that is not positive (budget 0 or
    a non-positive alpha = 1 work) 1/beta1 is used; at budget 0 every W1 > 0
    sits on the reversible Carnot point.
    """
    spec = cycle.spec_initial
    w1 = 0.0
    if is_product(cycle.initial.p, spec.d1, spec.d2):
        hot, _ = _local_works(cycle)
        w1 = hot.point(1.0) / hot.beta
    if not w1 > 0:
        w1 = 2.0 * budget / spec.beta1
    if not w1 > 0:
        w1 = 1.0 / spec.beta1
    return float(w1)


def resolve_split(cycle: Transformation, budget: float, split: SplitRule | str | None):
    """(w1, w2) on the budget line beta1 w1 + beta2 w2 = budget."""
    rule = SplitRule("alpha1") if split is None else (SplitRule.parse(split) if isinstance(split, str) else split)
    b1, b2 = cycle.spec_initial.beta1, cycle.spec_initial.beta2
    if rule.kind == "bath1":
        return rule, budget / b1, 0.0
    if rule.kind == "bath2":
        return rule, 0.0, budget / b2
    w1 = rule.w1 if rule.kind == "user" else default_w1(cycle, budget)
    return rule, w1, (budget - b1 * w1) / b2


def statements_report(cycle: Transformation, split: SplitRule | str | None = None, budget: float | None = None,
                      tol: float = FEAS_TOL) -> Statements:
    """Clausius, Kelvin-Planck and Carnot statements on a saturated split.

    The second Carnot bound is checked as eta2 >= beta2/beta1 - 1: on the
    budget line eta2 = beta2/beta1 - 1 + budget/(beta1 |W2|), so a
    non-negative budget puts eta2 at or above the bound.
    """
    b1, b2 = cycle.spec_initial.beta1, cycle.spec_initial.beta2
    if budget is None:
        budget = free_entropy_distance(cycle).distance
    if budget < -tol:
        raise ValueError("no valid split: the cycle has a negative free-entropy budget")
    _, w1, w2 = resolve_split(cycle, budget, split)
    wext = w1 + w2
    eta1 = wext / w1 if w1 > 0 else None
    eta2 = wext / abs(w2) if w2 < 0 else None
    items = [
        Statement("clausius", w1 + w2 > -tol, w1 + w2, "W1 + W2 > 0"),
        Statement("kelvin_planck", wext < w1 + tol and w2 <= tol, w1 - wext, "W_ext < W1"),
    ]
    floor1 = 1.0 - b1 / b2
    items.append(Statement("carnot_eta1", eta1 is not None and eta1 >= floor1 - tol,
                           (eta1 - floor1) if eta1 is not None else math.nan, "eta1 >= 1 - beta1/beta2"))
    floor2 = b2 / b1 - 1.0
    items.append(Statement("carnot_eta2", eta2 is not None and eta2 >= floor2 - tol,
                           (eta2 - floor2) if eta2 is not None else math.nan, "eta2 >= beta2/beta1 - 1"))
    resid = (eta1 - floor1 - budget / (b2 * w1)) if eta1 is not None else None
    return Statements(w1, w2, wext, eta1, eta2, resid, tuple(items))


@dataclass(frozen=True)
class Refrigeration:
    s_ref: float
    w1: float
    w2: float
    cost: float


def refrigeration_cost(cycle: Transformation, split: SplitRule | str | None = "bath1",
                       distance: DistanceResult | None = None, tol: float = FEAS_TOL) -> Refrigeration:
    """Work cost of running the cycle backwards, W = |W1r| - W2r.

    The reverse drop is S_ref = -sup_a dS_a. For user and alpha1 rules the
    hot-bath work is mirrored, W1r = -W1.
    """
    d = free_entropy_distance(cycle) if distance is None else distance
    if d.sup < -tol:
        raise ValueError("the forward cycle is not an engine; its reverse is already spontaneous")
    s_ref = -d.sup
    b1, b2 = cycle.spec_initial.beta1, cycle.spec_initial.beta2
    rule = SplitRule("alpha1") if split is None else (SplitRule.parse(split) if isinstance(split, str) else split)
    if rule.kind == "bath1":
        w1r, w2r = s_ref / b1, 0.0
    elif rule.kind == "bath2":
        w1r, w2r = 0.0, s_ref / b2
    else:
        _, w1, _ = resolve_split(cycle, d.distance, rule)
        w1r = -w1
        w2r = (s_ref - b1 * w1r) / b2
    return Refrigeration(s_ref, w1r, w2r, abs(w1r) - w2r)


@dataclass(frozen=True)
class HeatReport:
    q1: float
    q2: float
    de1: float
    de2: float
    weighted: float
    efficiency: Optional[float]


def heat_report(cycle: Transformation, w1: float, w2: float) -> HeatReport:
    """Heat drawn from each bath, Q_x = dE_x + W_x (first law per subsystem).

    dE_x is the change of subsystem x's mean energy, measured with the final
    Hamiltonian for the final marginal.
    """
    e1i, e2i = mean_energies(cycle.initial.p, cycle.spec_initial)
    e1f, e2f = mean_energies(cycle.final.p, cycle.spec_final)
    de1, de2 = e1f - e1i, e2f - e2i
    q1, q2 = de1 + w1, de2 + w2
    b1, b2 = cycle.spec_initial.beta1, cycle.spec_initial.beta2
    eff = (w1 + w2) / q1 if q1 > 0 else None
    return HeatReport(q1, q2, de1, de2, b1 * q1 + b2 * q2, eff)


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class EngineReport:
    spontaneous: bool
    catalytic: bool
    budget: float
    budget_alpha: float
    cost_sup: float
    split: str
    statements: Optional[Statements]
    alpha_works: Optional[AlphaWorkTable]
    local_to: Optional[LocalComparison]
    refrigeration: Optional[Refrigeration]
    heat: Optional[HeatReport]
    mutual_information: Optional[float] = None
    notes: tuple = field(default_factory=tuple)


def _report(cycle: Transformation, split, catalytic, grid, tol, notes, mi=None, engine_mode=True) -> EngineReport:
    d = free_entropy_distance(cycle, grid)
    spont = d.distance >= -tol if catalytic else slto_feasible(cycle)
    notes = list(notes)
    product = is_product(cycle.initial.p, cycle.spec_initial.d1, cycle.spec_initial.d2)
    table = local = None
    if product:
        table = alpha_works(cycle, grid)
        local = local_to_comparison(cycle, d.distance, grid) if d.distance >= -tol else None
    else:
        notes.append("correlated input: only the budget is reported, no per-bath alpha-works")
    stm = heat = refr = None
    rule_label = "none"
    if d.distance >= -tol and engine_mode:
        rule, w1, w2 = resolve_split(cycle, d.distance, split)
        rule_label = rule.label()
        stm = statements_report(cycle, rule, d.distance, tol)
        heat = heat_report(cycle, stm.w1, stm.w2)
        refr = refrigeration_cost(cycle, rule, d, tol)
    elif d.distance < -tol:
        notes.append("negative budget: no valid work split")
    return EngineReport(bool(spont), catalytic, d.distance, d.alpha, d.sup, rule_label, stm, table, local,
                        refr, heat, mi, tuple(notes))


def engine_report(state, spec: EngineSpec, split=None, catalytic: bool = True, grid=None,
                  tol: float = FEAS_TOL) -> EngineReport:
    """Everything about the one-step cycle started from ``state``."""
    cycle = one_step_cycle(state, spec)
    return _report(cycle, split, catalytic, grid, tol, ())


def correlation_engine(tau, spec: EngineSpec, split=None, catalytic: bool = True, grid=None,
                       tol: float = FEAS_TOL) -> EngineReport:
    """Consume correlations: tau_AB -> tau_A (x) tau_B with H1 = H2.

    Both marginals must coincide, so the product of marginals is left
    unchanged by the engine SWAP and no local energy changes.
    """
    if spec.d1 != spec.d2 or not np.allclose(spec.h1.levels, spec.h2.levels, rtol=0, atol=1e-12):
        raise ValueError("correlation engine needs H1 = H2")
    s = _as_block(tau, spec)
    pa, pb = marginals(s.p, spec.d1, spec.d2)
    if np.max(np.abs(pa - pb)) > 1e-10:
        raise ValueError("marginals are not stationary under the cycle (tau_A != tau_B)")
    ws = weighted_spectrum(spec)
    t = Transformation(s, spec, BlockSpectrum(np.outer(pa, pb).ravel(), ws), spec)
    h = lambda v: float(-np.sum(v[v > 0] * np.log(v[v > 0])))
    mi = h(pa) + h(pb) - h(s.p)
    engine_mode = spec.beta1 < spec.beta2
    notes = ["entropy grows by the mutual information, which bounds beta1 Q1 + beta2 Q2 from above"]
    if not engine_mode:
        notes.append("beta1 >= beta2: engine statements skipped")
    return _report(t, split, catalytic, grid, tol, notes, mi, engine_mode)
