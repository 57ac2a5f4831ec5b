"""Kernel ridge regression per edge and the joint space-time smoother."""

import numpy as np
import pytest

from gssc import (FormatError, GridEstimate, KrrConfig, NumericalError,
                  SynthSpec, canonical_complex, evaluation_grid,
                  krr_fit_eval, krr_grid, laplacian, load_grid, rbf_kernel,
                  sample_async, save_grid, sc_product, synthesize)


def test_config_validation():
    with pytest.raises(ValueError):
        KrrConfig(lengthscale=0.0)
    with pytest.raises(ValueError):
        KrrConfig(ridge=-1.0)
    assert KrrConfig().ridge == pytest.approx(1e-2)


def test_kernel_matrix_values():
    K = rbf_kernel([0.0, 1.0], [0.0, 1.0], lengthscale=1.0)
    assert K[0, 0] == pytest.approx(1.0)
    assert K[0, 1] == pytest.approx(np.exp(-0.5))
    wide = rbf_kernel([0.0], [3.0], lengthscale=100.0)
    assert wide[0, 0] == pytest.approx(1.0, rel=1e-3)


def test_single_sample_interpolates_without_ridge():
    pred = krr_fit_eval([0.5], [2.0], KrrConfig(ridge=0.0), [0.5])
    assert pred[0] == pytest.approx(2.0)


def test_constant_samples_predict_the_constant():
    t = np.linspace(-3, 3, 30)
    y = np.full(30, 4.2)
    pred = krr_fit_eval(t, y, KrrConfig(lengthscale=1.0, ridge=1e-8), t)
    assert np.allclose(pred, 4.2, atol=1e-6)


def test_dense_samples_recover_a_smooth_curve():
    t = np.linspace(-np.pi, np.pi, 40)
    y = np.sin(t)
    pred = krr_fit_eval(t, y, KrrConfig(lengthscale=1.0, ridge=1e-6), t)
    assert np.max(np.abs(pred - y)) < 1e-2


def test_duplicate_instants_without_ridge_fail_loudly():
    with pytest.raises(NumericalError, match="ridge"):
        krr_fit_eval([1.0, 1.0], [0.0, 1.0], KrrConfig(ridge=0.0), [1.0])


def test_training_residual_shrinks_with_the_ridge():
    rng = np.random.default_rng(0)
    t = np.sort(rng.uniform(-3, 3, 25))
    y = np.sin(t) + 0.1 * rng.standard_normal(25)
    resid = [float(np.sum((krr_fit_eval(t, y, KrrConfig(ridge=r), t) - y) ** 2))
             for r in (1.0, 1e-1, 1e-2, 1e-4)]
    assert all(a >= b - 1e-12 for a, b in zip(resid, resid[1:]))


def test_grid_fit_runs_per_edge():
    rep = canonical_complex("cycle(4)")
    truth = synthesize(rep, SynthSpec(n_irr=4, n_sol=4, time_order=2, seed=0))
    samples = sample_async(truth, 30, sigma=0.0, seed=1)
    est = krr_grid(samples, KrrConfig(lengthscale=1.0, ridge=1e-6))
    assert est.n_edges == 4
    assert est.values.shape == (4, 100)
    # independent of every other edge: refitting a single edge agrees
    single = krr_fit_eval(samples.t[2], samples.y[2],
                          KrrConfig(lengthscale=1.0, ridge=1e-6), est.grid)
    assert np.allclose(est.values[2], single, atol=0)


def test_product_smoother_identity_at_zero_strength():
    rep = canonical_complex("cycle(4)")
    rng = np.random.default_rng(2)
    grid0 = GridEstimate(rng.standard_normal((4, 12)), np.linspace(-3, 3, 12))
    out = sc_product(grid0, rep, alpha=0.0, beta=0.0)
    assert np.allclose(out.values, grid0.values, atol=1e-12)
    with pytest.raises(ValueError):
        sc_product(grid0, rep, alpha=-0.1)


def test_product_smoother_fixes_harmonic_constant_signals():
    # a harmonic edge vector times a constant-in-time profile is a fixed
    # point: L_1 kills the space factor and L_t the time factor
    rep = canonical_complex("cycle(4)")
    L1 = laplacian(rep, 1)
    eigvals, eigvecs = np.linalg.eigh(L1)
    h = eigvecs[:, 0]
    assert abs(eigvals[0]) < 1e-12
    grid0 = GridEstimate(np.outer(h, np.ones(15)), np.linspace(-3, 3, 15))
    out = sc_product(grid0, rep, alpha=0.7, beta=1.3)
    assert np.allclose(out.values, grid0.values, atol=1e-10)


def test_product_smoother_matches_a_kron_solve():
    rep = canonical_complex("cycle(3)")
    rng = np.random.default_rng(3)
    n_t = 6
    grid0 = GridEstimate(rng.standard_normal((3, n_t)), np.linspace(-1, 1, n_t))
    alpha, beta = 0.4, 0.9
    out = sc_product(grid0, rep, alpha=alpha, beta=beta)

    L1 = laplacian(rep, 1)
    ones = np.zeros((n_t - 1, n_t))
    ones[np.arange(n_t - 1), np.arange(n_t - 1)] = -1.0
    ones[np.arange(n_t - 1), np.arange(1, n_t)] = 1.0
    Lt = ones.T @ ones
    A_big = np.kron(np.eye(n_t), np.eye(3) + alpha * L1) + beta * np.kron(Lt.T, np.eye(3))
    z = np.linalg.solve(A_big, grid0.values.ravel(order="F"))
    assert np.allclose(out.values, z.reshape((3, n_t), order="F"), atol=1e-10)


def test_product_smoother_lowers_its_own_objective():
    rep = canonical_complex("cycle(4)")
    rng = np.random.default_rng(4)
    grid0 = GridEstimate(rng.standard_normal((4, 10)), np.linspace(-2, 2, 10))
    alpha, beta = 0.5, 0.5
    out = sc_product(grid0, rep, alpha=alpha, beta=beta)
    L1 = laplacian(rep, 1)
    ones = np.zeros((9, 10))
    ones[np.arange(9), np.arange(9)] = -1.0
    ones[np.arange(9), np.arange(1, 10)] = 1.0
    Lt = ones.T @ ones

    def objective(Z):
        return (np.sum((Z - grid0.values) ** 2)
                + alpha * np.trace(Z.T @ L1 @ Z)
                + beta * np.trace(Z @ Lt @ Z.T))

    assert objective(out.values) <= objective(grid0.values) + 1e-10
    # and a first-order stationarity check of the quadratic
    grad = 2 * (out.values - grid0.values) + 2 * alpha * L1 @ out.values \
        + 2 * beta * out.values @ Lt
    assert np.max(np.abs(grad)) <= 1e-8


def test_grid_csv_round_trip(tmp_path):
    rng = np.random.default_rng(5)
    est = GridEstimate(rng.standard_normal((3, 7)), np.linspace(-3, 3, 7))
    path = tmp_path / "g.csv"
    save_grid(est, path)
    loaded = load_grid(path)
    assert np.allclose(loaded.grid, est.grid, atol=0)
    assert np.allclose(loaded.values, est.values, atol=0)

    bad = tmp_path / "bad.csv"
    bad.write_text("edge,t_0\n0,1.0\n")
    with pytest.raises(FormatError, match="grid"):
        load_grid(bad)


def test_grid_estimate_shape_check():
    with pytest.raises(ValueError):
        GridEstimate(np.zeros((2, 5)), np.linspace(0, 1, 4))
    assert evaluation_grid().shape == (100,)
