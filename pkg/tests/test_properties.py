import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from thermoforge.divergences import renyi_relative_entropy
from thermoforge.majorization import lorenz_from, majorizes
from thermoforge.spectra import DenseState, EngineSpec, block_dephase, off_block_norm, weighted_spectrum
from thermoforge.veribench import TrialConfig, random_instance

settings.register_profile("thermoforge", max_examples=60, deadline=None)
settings.load_profile("thermoforge")

ALPHAS = st.sampled_from([0.0, 0.2, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0, 30.0, math.inf])


@st.composite
def dists(draw, n=None, full=True):
    n = draw(st.integers(2, 6)) if n is None else n
    lo = 0.01 if full else 0.0
    w = draw(arrays(float, n, elements=st.floats(lo, 1.0)))
    w[w < 1e-3] = 0.0  # keep the support unambiguous
    if w.sum() <= 0:
        w[0] = 1.0
    return w / w.sum()


@st.composite
def pairs(draw):
    n = draw(st.integers(2, 6))
    return draw(dists(n, full=False)), draw(dists(n))


@given(pairs(), ALPHAS)
def test_divergence_nonnegative(pq, a):
    p, q = pq
    assert renyi_relative_entropy(p, q, a) >= -1e-12


@given(pairs(), st.floats(0.0, 20.0), st.floats(0.0, 20.0))
def test_divergence_monotone_in_alpha(pq, a, b):
    p, q = pq
    lo, hi = sorted((a, b))
    assert renyi_relative_entropy(p, q, lo) <= renyi_relative_entropy(p, q, hi) + 1e-9


@given(pairs(), pairs(), ALPHAS)
def test_divergence_additive(pq1, pq2, a):
    (p1, q1), (p2, q2) = pq1, pq2
    joint = renyi_relative_entropy(np.outer(p1, p2).ravel(), np.outer(q1, q2).ravel(), a)
    parts = renyi_relative_entropy(p1, q1, a) + renyi_relative_entropy(p2, q2, a)
    assert math.isclose(joint, parts, rel_tol=1e-9, abs_tol=1e-9)


@given(pairs(), st.integers(0, 2**32 - 1), ALPHAS)
def test_data_processing(pq, seed, a):
    p, q = pq
    m = np.random.default_rng(seed).dirichlet(np.ones(3), size=p.size).T
    assert renyi_relative_entropy(m @ p, m @ q, a) <= renyi_relative_entropy(p, q, a) + 1e-9


@given(pairs())
def test_continuous_at_one(pq):
    p, q = pq
    d1 = renyi_relative_entropy(p, q, 1.0)
    for eps in (1e-6, -1e-6):
        assert abs(renyi_relative_entropy(p, q, 1.0 + eps) - d1) <= 1e-4


@given(pairs())
def test_lorenz_curve_concave_and_complete(pq):
    p, q = pq
    c = lorenz_from(p, q)
    slopes = np.diff(c.y) / np.diff(c.x)
    assert np.all(np.diff(slopes) <= 1e-9)
    assert c.x[0] == 0 and c.y[0] == 0
    assert math.isclose(c.x[-1], 1.0) and math.isclose(c.y[-1], 1.0)


@given(dists(4, full=False), st.integers(0, 2**32 - 1))
def test_majorization_transitive(p, seed):
    rng = np.random.default_rng(seed)
    m1 = rng.dirichlet(np.ones(4), size=4)
    m2 = rng.dirichlet(np.ones(4), size=4)
    # doubly stochastic maps by averaging permutations
    def ds(w):
        out = np.zeros((4, 4))
        for wt in w:
            out += wt * np.eye(4)[rng.permutation(4)]
        return out / w.sum()
    a = ds(m1[0])
    b = ds(m2[0])
    p2 = a @ p
    p3 = b @ p2
    assert majorizes(p, p2) and majorizes(p2, p3) and majorizes(p, p3)


@given(st.integers(0, 2**32 - 1))
def test_block_dephase_is_projection(seed):
    rng = np.random.default_rng(seed)
    spec = EngineSpec.from_lists([0, 1], [0, 0.5], 0.5, 1.0)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = DenseState(m @ m.conj().T / np.trace(m @ m.conj().T).real)
    ws = weighted_spectrum(spec)
    once = block_dephase(rho, ws)
    twice = block_dephase(once, ws)
    assert np.allclose(once.matrix, twice.matrix, atol=1e-14)
    assert off_block_norm(once, ws) == 0.0
    assert math.isclose(np.trace(once.matrix).real, 1.0)


@given(st.integers(0, 2**63 - 1), st.integers(0, 1000),
       st.sampled_from(["spec", "state", "product-state", "transformation"]))
def test_random_instance_deterministic(seed, k, kind):
    cfg = TrialConfig(seed=seed)
    a, b = random_instance(cfg, kind, k), random_instance(cfg, kind, k)
    if kind == "spec":
        assert a.same_as(b, tol=0.0)
    elif kind == "transformation":
        assert np.array_equal(a.initial.p, b.initial.p) and np.array_equal(a.final.p, b.final.p)
    else:
        assert a[0].same_as(b[0], tol=0.0) and np.array_equal(a[1], b[1])
