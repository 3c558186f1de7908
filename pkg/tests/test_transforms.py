import math

import numpy as np
import pytest

from thermoforge.divergences import alpha_free_entropy, alpha_grid
from thermoforge.majorization import d_majorize_lp, thermo_majorizes
from thermoforge.spectra import BlockSpectrum, EngineSpec, semi_gibbs, weighted_spectrum
from thermoforge.transforms import (
    SplitRule, Transformation, clock_extend, cslto_feasible, cslto_feasible_signed, distillable_and_formation,
    free_entropy_distance, free_entropy_profile, slto_feasible, split_budget, transform_report, work_quantities,
)

from .conftest import ground


def gibbs_of(spec):
    return semi_gibbs(spec).q


def test_identity(qubit_spec):
    p = np.array([0.4, 0.3, 0.2, 0.1])
    t = Transformation.build(p, qubit_spec, p)
    assert cslto_feasible(t) == (True, None)
    assert slto_feasible(t) and cslto_feasible_signed(t)
    d = free_entropy_distance(t)
    assert d.distance == 0.0 and d.sup == 0.0
    f_grid, _ = free_entropy_profile(t)
    assert np.all(f_grid(alpha_grid()) == 0.0)
    w = work_quantities(t)
    assert w.w_ext == 0.0 and w.w_cost == 0.0


def test_ground_to_gibbs(qubit_spec, frozen):
    t = Transformation.build(ground(4), qubit_spec, gibbs_of(qubit_spec))
    ok, a = cslto_feasible(t)
    assert ok and a is None
    d = free_entropy_distance(t)
    assert d.distance == pytest.approx(frozen["qubit_logZ"], abs=1e-12)
    assert d.sup == pytest.approx(frozen["qubit_logZ"], abs=1e-12)
    f_grid, _ = free_entropy_profile(t)
    assert np.allclose(f_grid(alpha_grid()), frozen["qubit_logZ"], atol=1e-12)
    w = work_quantities(t, "bath1", d)
    assert w.w1 == pytest.approx(frozen["qubit_w_ext_bath1"], abs=1e-12)
    assert w.w2 == 0.0 and w.w_ext == w.w1
    w = work_quantities(t, "bath2", d)
    assert w.w2 == pytest.approx(frozen["qubit_logZ"], abs=1e-12) and w.w1 == 0.0


def test_reverse_is_infeasible_with_witness(qubit_spec):
    t = Transformation.build(gibbs_of(qubit_spec), qubit_spec, ground(4))
    ok, a = cslto_feasible(t)
    assert not ok and a is not None and a >= 0
    assert not slto_feasible(t)


def test_gibbs_to_gibbs_across_specs(qubit_spec):
    other = EngineSpec.from_lists([0, 2, 3], [0, 0.5], 0.5, 1.0)
    t = Transformation.build(gibbs_of(qubit_spec), qubit_spec, gibbs_of(other), other)
    d = free_entropy_distance(t)
    shift = semi_gibbs(other).logZ - semi_gibbs(qubit_spec).logZ
    assert d.distance == pytest.approx(shift, abs=1e-12)
    assert d.sup == pytest.approx(shift, abs=1e-12)


def test_transformation_needs_shared_baths(qubit_spec):
    other = EngineSpec.from_lists([0, 1], [0, 1], 0.7, 1.0)
    with pytest.raises(ValueError):
        Transformation.build(ground(4), qubit_spec, ground(4), other)


def test_clock_extension_bookkeeping(qubit_spec):
    other = EngineSpec.from_lists([0, 2], [0, 3], 0.5, 1.0)
    rng = np.random.default_rng(0)
    p, p2 = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
    t = Transformation.build(p, qubit_spec, p2, other)
    ext = clock_extend(t)
    assert ext.spec.dim == 16
    assert np.allclose(ext.initial.p.reshape(4, 4)[:2, :2].ravel(), p)
    assert np.allclose(ext.final.p.reshape(4, 4)[2:, 2:].ravel(), p2)
    for a in (0.0, 0.3, 1.0, 2.5, math.inf):
        lhs = alpha_free_entropy(ext.initial, ext.spec, a) - alpha_free_entropy(ext.final, ext.spec, a)
        rhs = alpha_free_entropy(t.initial, qubit_spec, a) - alpha_free_entropy(t.final, other, a)
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_clock_extension_same_hamiltonian_verdicts(qubit_spec):
    rng = np.random.default_rng(1)
    for _ in range(30):
        p, p2 = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
        if rng.random() < 0.5:
            p2 = 0.6 * p + 0.4 * gibbs_of(qubit_spec)
        t = Transformation.build(p, qubit_spec, p2)
        ext = clock_extend(t)
        assert thermo_majorizes(ext.initial, ext.final, ext.spec) == slto_feasible(t)
        te = Transformation(ext.initial, ext.spec, ext.final, ext.spec)
        assert free_entropy_distance(te).distance == pytest.approx(free_entropy_distance(t).distance, abs=1e-9)


def test_catalysis_enlarges_the_feasible_set(qubit_spec):
    p, p2 = np.array([0.41, 0.2, 0.0, 0.39]), np.array([0.13, 0.09, 0.44, 0.34])
    t = Transformation.build(p, qubit_spec, p2)
    assert cslto_feasible(t)[0]
    assert free_entropy_distance(t).distance > 0.05
    assert not slto_feasible(t)
    assert d_majorize_lp(p, gibbs_of(qubit_spec), p2, gibbs_of(qubit_spec))[0] is False


def test_negative_alpha_can_forbid(qubit_spec):
    p, p2 = np.array([0.22, 0.45, 0.19, 0.14]), np.array([0.29, 0.04, 0.52, 0.15])
    t = Transformation.build(p, qubit_spec, p2)
    assert cslto_feasible(t)[0]
    assert not cslto_feasible_signed(t)
    f_grid, _ = free_entropy_profile(t)
    assert f_grid(np.array([-1.0]))[0] < -0.04


def test_signed_defers_without_full_support(qubit_spec):
    t = Transformation.build(ground(4), qubit_spec, gibbs_of(qubit_spec))
    assert cslto_feasible_signed(t) == cslto_feasible(t)[0]
    t = Transformation.build(gibbs_of(qubit_spec), qubit_spec, gibbs_of(qubit_spec))
    assert cslto_feasible_signed(t)


def test_distillable_and_formation(qubit_spec, frozen):
    ws = weighted_spectrum(qubit_spec)
    d, f = distillable_and_formation(BlockSpectrum(gibbs_of(qubit_spec), ws), qubit_spec)
    assert d == pytest.approx(0.0, abs=1e-14) and f == pytest.approx(0.0, abs=1e-14)
    d, f = distillable_and_formation(BlockSpectrum(ground(4), ws), qubit_spec)
    assert d == pytest.approx(frozen["qubit_logZ"], abs=1e-14) and f == pytest.approx(d, abs=1e-14)
    d, f = distillable_and_formation(BlockSpectrum(np.array([0.4, 0.3, 0.2, 0.1]), ws), qubit_spec)
    assert d == pytest.approx(0.0, abs=1e-15) and f > 0


def test_split_rules():
    assert SplitRule.parse("w1=0.25") == SplitRule("user", 0.25)
    assert SplitRule.parse("bath2").label() == "bath2"
    with pytest.raises(ValueError):
        SplitRule.parse("bath3")
    with pytest.raises(ValueError):
        SplitRule("user")
    w1, w2 = split_budget(1.0, SplitRule("user", 1.5), 0.5, 1.0)
    assert 0.5 * w1 + 1.0 * w2 == pytest.approx(1.0)


def test_user_split_flags_sign_contradiction(qubit_spec):
    t = Transformation.build(ground(4), qubit_spec, gibbs_of(qubit_spec))
    assert work_quantities(t, SplitRule("user", -1.0)).flagged
    assert not work_quantities(t, SplitRule("user", 3.0)).flagged
    with pytest.raises(ValueError):
        work_quantities(t, "alpha1")


def test_report_invariants(qubit_spec):
    rng = np.random.default_rng(2)
    for _ in range(20):
        p, p2 = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
        r = transform_report(Transformation.build(p, qubit_spec, p2), signed=True)
        assert r.s_distance <= r.s_cost + 1e-9
        assert (not r.feasible_cslto) or r.s_distance >= -1e-9
        assert (not r.feasible_slto) or r.feasible_signed
        assert (not r.feasible_signed) or r.feasible_cslto
        assert r.work.w_ext <= r.work.w_cost + 1e-9
        assert r.feasible == r.feasible_signed


def test_report_non_catalytic_mode(qubit_spec):
    p, p2 = np.array([0.41, 0.2, 0.0, 0.39]), np.array([0.13, 0.09, 0.44, 0.34])
    t = Transformation.build(p, qubit_spec, p2)
    assert transform_report(t).feasible
    assert not transform_report(t, catalytic=False).feasible


def test_reduction_equal_betas_matches_single_bath():
    spec = EngineSpec.from_lists([0, 0.7], [0, 1.3, 2.0], 0.8, 0.8)
    rng = np.random.default_rng(4)
    E = (spec.h1.levels[:, None] + spec.h2.levels[None, :]).ravel()
    g = np.exp(-0.8 * E)
    g /= g.sum()
    for _ in range(10):
        p, p2 = rng.dirichlet(np.ones(6)), rng.dirichlet(np.ones(6))
        d = free_entropy_distance(Transformation.build(p, spec, p2)).distance
        # at alpha = 1 the drop is beta * (F(p) - F(p2)) with F = <E> - H / beta
        F = lambda v: E @ v + np.sum(v * np.log(v)) / 0.8
        assert d <= 0.8 * (F(p) - F(p2)) + 1e-9
