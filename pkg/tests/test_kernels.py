import numpy as np
import pytest

from thermoforge import kernels
from thermoforge.lp import phase1

BACKENDS = kernels.available_backends()
IDS = [b.BACKEND for b in BACKENDS]


def test_active_backend_is_listed():
    assert kernels.BACKEND in IDS
    assert IDS[0] == "python"


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_renyi_logsum_grid_matches_reference(backend):
    rng = np.random.default_rng(0)
    p, q = rng.dirichlet(np.ones(7)), rng.dirichlet(np.ones(7))
    p[3] = 0.0
    p /= p.sum()
    alphas = np.array([-2.0, -0.5, 0.3, 0.7, 1.5, 4.0])
    with np.errstate(divide="ignore"):
        got = backend.renyi_logsum_grid(np.log(p), np.log(q), alphas)
    m = p > 0
    for a, g in zip(alphas, got):
        if a <= 0:
            assert g == np.inf
        else:
            assert g == pytest.approx(np.log(np.sum(p[m] ** a * q[m] ** (1 - a))), rel=1e-13)


@pytest.mark.parametrize("backend", BACKENDS, ids=IDS)
def test_lorenz_margin_matches_reference(backend):
    xa = np.array([0.0, 0.5, 1.0])
    ya = np.array([0.0, 0.8, 1.0])
    xb = np.array([0.0, 0.25, 1.0])
    yb = np.array([0.0, 0.25, 1.0])
    assert backend.lorenz_margin(xa, ya, xb, yb) == pytest.approx(0.0, abs=1e-15)
    assert backend.lorenz_margin(xb, yb, xa, ya) == pytest.approx(-0.3)


def test_backends_agree_on_random_inputs():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    py, cy = BACKENDS
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(1, 20))
        p, q = rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n))
        a = rng.uniform(-3, 5, size=9)
        a = a[(a != 0) & (a != 1)]
        assert np.allclose(py.renyi_logsum_grid(np.log(p), np.log(q), a),
                           cy.renyi_logsum_grid(np.log(p), np.log(q), a), rtol=1e-13)
        xa = np.concatenate(([0.0], np.cumsum(rng.random(n))))
        xb = np.concatenate(([0.0], np.cumsum(rng.random(n))))
        xb *= xa[-1] / xb[-1]
        ya = np.concatenate(([0.0], np.cumsum(rng.dirichlet(np.ones(n)))))
        yb = np.concatenate(([0.0], np.cumsum(rng.dirichlet(np.ones(n)))))
        assert py.lorenz_margin(xa, ya, xb, yb) == pytest.approx(cy.lorenz_margin(xa, ya, xb, yb), abs=1e-14)


def test_simplex_backends_pivot_identically():
    if len(BACKENDS) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(9)
    for _ in range(30):
        m, n = int(rng.integers(2, 6)), int(rng.integers(3, 9))
        A = rng.normal(size=(m, n))
        b = A @ rng.random(n) if rng.random() < 0.5 else rng.normal(size=m)
        out = []
        for be in BACKENDS:
            T = np.zeros((m + 1, n + m + 1))
            T[:m, :n] = A * np.where(b < 0, -1, 1)[:, None]
            T[:m, n:n + m] = np.eye(m)
            T[:m, -1] = np.abs(b)
            T[m, :n] = -T[:m, :n].sum(axis=0)
            T[m, -1] = -np.abs(b).sum()
            basis = np.arange(n, n + m, dtype=np.int64)
            status, iters = be.simplex_phase1(T, basis, 1000, 1e-12)
            out.append((status, iters, basis.copy(), T.copy()))
        assert out[0][:2] == out[1][:2]
        assert np.array_equal(out[0][2], out[1][2])
        assert np.allclose(out[0][3], out[1][3], atol=1e-12)


def test_phase1_known_answers():
    assert phase1([[1.0, 1.0]], [1.0]).status == "feasible"
    assert phase1([[1.0, 1.0]], [-1.0]).status == "infeasible"
    res = phase1(np.eye(2), [0.3, 0.7])
    assert np.allclose(res.x, [0.3, 0.7])
