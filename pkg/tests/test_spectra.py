import numpy as np
import pytest

from thermoforge.spectra import (
    BlockSpectrum, DenseState, EnergyLevels, EngineSpec, block_dephase, block_spectrum, compose_populations,
    compose_specs, is_product, marginals, mean_energies, off_block_norm, semi_gibbs, swap_populations,
    weighted_spectrum,
)


def test_levels_shift_to_zero():
    assert np.allclose(EnergyLevels([2.0, 3.5]).levels, [0.0, 1.5])


@pytest.mark.parametrize("levels", [[], [0.0, np.inf], [np.nan]])
def test_levels_reject_bad_input(levels):
    with pytest.raises(ValueError):
        EnergyLevels(levels)


def test_bath_pair_requires_positive_betas():
    with pytest.raises(ValueError):
        EngineSpec.from_lists([0], [0], 0.0, 1.0)


def test_dimension_cap():
    with pytest.raises(ValueError):
        EngineSpec.from_lists(np.zeros(100), np.zeros(100), 1.0, 2.0)


def test_weighted_spectrum_qubits(qubit_spec):
    ws = weighted_spectrum(qubit_spec)
    assert np.allclose(ws.w, [0.0, 1.0, 0.5, 1.5])
    assert len(ws.blocks) == 4


def test_weighted_spectrum_equal_betas_degenerate_middle():
    ws = weighted_spectrum(EngineSpec.from_lists([0, 1], [0, 1], 1.0, 1.0))
    assert np.allclose(ws.w, [0, 1, 1, 2])
    sizes = sorted(len(b) for b in ws.blocks)
    assert sizes == [1, 1, 2]


def test_weighted_spectrum_trivial():
    ws = weighted_spectrum(EngineSpec.from_lists([0], [0], 0.3, 0.7))
    assert ws.w.tolist() == [0.0] and len(ws.blocks) == 1


def test_semi_gibbs_uniform_for_degenerate_levels():
    g = semi_gibbs(EngineSpec.from_lists([0, 0], [0, 0], 0.4, 2.0))
    assert np.allclose(g.q, 0.25, atol=1e-15)


def test_semi_gibbs_q00(qubit_spec, frozen):
    g = semi_gibbs(qubit_spec)
    assert g.q[0] == pytest.approx(frozen["qubit_q00"], abs=1e-14)
    assert g.logZ == pytest.approx(frozen["qubit_logZ"], abs=1e-14)
    assert abs(g.q.sum() - 1.0) <= 1e-12
    g1 = np.exp(-0.5 * np.array([0, 1.0]))
    g2 = np.exp(-1.0 * np.array([0, 1.0]))
    assert np.allclose(g.q.reshape(2, 2), np.outer(g1 / g1.sum(), g2 / g2.sum()), atol=1e-15)


def test_semi_gibbs_cold_limit():
    g = semi_gibbs(EngineSpec.from_lists([0, 1], [0], 50.0, 1.0))
    assert g.q[0] == pytest.approx(1.0, abs=1e-20)
    assert g.q[1] == pytest.approx(np.exp(-50.0), rel=1e-12)


def test_block_dephase_examples(qubit_spec):
    ws = weighted_spectrum(EngineSpec.from_lists([0, 1], [0], 1.0, 1.0))
    plus = DenseState.pure([1, 1])
    assert np.allclose(block_dephase(plus, ws).matrix, np.diag([0.5, 0.5]))
    diag = DenseState.diagonal([0.4, 0.3, 0.2, 0.1])
    wq = weighted_spectrum(qubit_spec)
    assert np.allclose(block_dephase(diag, wq).matrix, diag.matrix)
    # coherence inside a degenerate block survives
    deg = weighted_spectrum(EngineSpec.from_lists([0, 1], [0, 1], 1.0, 1.0))
    m = np.diag([0.1, 0.4, 0.4, 0.1]).astype(complex)
    m[1, 2] = m[2, 1] = 0.2
    rho = DenseState(m)
    assert np.allclose(block_dephase(rho, deg).matrix, m)
    assert off_block_norm(rho, deg) == 0.0


def test_block_dephase_projection_and_trace(qubit_spec):
    rng = np.random.default_rng(3)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    m = g @ g.conj().T
    rho = DenseState(m / np.trace(m).real)
    ws = weighted_spectrum(qubit_spec)
    once = block_dephase(rho, ws).matrix
    twice = block_dephase(DenseState(once), ws).matrix
    assert np.max(np.abs(once - twice)) <= 1e-12
    assert np.array_equal(np.diag(once), np.diag(rho.matrix))


def test_dense_state_validation():
    with pytest.raises(ValueError):
        DenseState(np.array([[0.5, 0.3], [0.1, 0.5]]))
    with pytest.raises(ValueError):
        DenseState(np.diag([1.2, -0.2]))
    with pytest.raises(ValueError):
        DenseState(np.diag([0.5, 0.4]))


def test_block_spectrum_diagonal_and_block():
    ws = weighted_spectrum(EngineSpec.from_lists([0, 1], [0], 1.0, 1.0))
    assert np.allclose(block_spectrum(DenseState.diagonal([0.7, 0.3]), ws).p, [0.7, 0.3])
    # 2x2 coherent block with eigenvalues (0.6, 0.1): trace 0.7, det 0.06
    deg = weighted_spectrum(EngineSpec.from_lists([0, 1], [0, 1], 1.0, 1.0))
    m = np.diag([0.2, 0.35, 0.35, 0.1]).astype(complex)
    off = np.sqrt(0.35 * 0.35 - 0.06)
    m[1, 2] = m[2, 1] = off
    s = block_spectrum(DenseState(m), deg)
    assert sorted(s.p[1:3].tolist()) == pytest.approx([0.1, 0.6], abs=1e-12)
    assert s.p[0] == pytest.approx(0.2) and s.p[3] == pytest.approx(0.1)


def test_block_spectrum_of_semi_gibbs(qubit_spec):
    g = semi_gibbs(qubit_spec)
    s = block_spectrum(DenseState.diagonal(g.q), weighted_spectrum(qubit_spec))
    assert np.allclose(s.p, g.q, atol=1e-15)


def test_block_spectrum_rejects_coherence(qubit_spec):
    with pytest.raises(ValueError):
        block_spectrum(DenseState.pure([1, 1, 0, 0]), weighted_spectrum(qubit_spec))


def test_block_spectrum_validates_normalization(qubit_spec):
    with pytest.raises(ValueError):
        BlockSpectrum(np.array([0.5, 0.5, 0.5, 0.0]), weighted_spectrum(qubit_spec))


def test_marginals_swap_product():
    a, b = np.array([0.7, 0.3]), np.array([0.2, 0.5, 0.3])
    p = np.outer(a, b).ravel()
    ma, mb = marginals(p, 2, 3)
    assert np.allclose(ma, a) and np.allclose(mb, b)
    assert is_product(p, 2, 3)
    sp = swap_populations(p, 2, 3)
    assert np.allclose(sp, np.outer(b, a).ravel())
    assert np.array_equal(swap_populations(sp, 3, 2), p)


def test_mean_energies(qubit_spec):
    e1, e2 = mean_energies(np.array([0.1, 0.2, 0.3, 0.4]), qubit_spec)
    assert e1 == pytest.approx(0.7) and e2 == pytest.approx(0.6)


def test_compose_specs_and_populations(qubit_spec):
    other = EngineSpec.from_lists([0, 2], [0], 0.5, 1.0)
    c = compose_specs(qubit_spec, other)
    assert (c.d1, c.d2) == (4, 2)
    pa = np.array([0.1, 0.2, 0.3, 0.4])
    pb = np.array([0.6, 0.4])
    pc = compose_populations(pa, qubit_spec, pb, other)
    assert pc.sum() == pytest.approx(1.0)
    assert np.allclose(semi_gibbs(c).q, compose_populations(semi_gibbs(qubit_spec).q, qubit_spec,
                                                            semi_gibbs(other).q, other))
