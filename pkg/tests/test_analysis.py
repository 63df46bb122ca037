import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from iontrap_revivals.analysis import average_fidelity_curve, inversion_curve, wigner, wigner_at
from iontrap_revivals.approx import RegimeError, coefficients_at, time_scales
from iontrap_revivals.dynamics import ModelParams
from iontrap_revivals.hilbert import TruncationError, cat_state, coherent_state, default_truncation
from iontrap_revivals.protocols import special_point


def wigner_oracle(rho, beta, big=90):
    # 2 Tr[D(beta) P D(-beta) rho] with D from a dense matrix exponential
    dim = rho.shape[0]
    a = np.diag(np.sqrt(np.arange(1, big)), 1)
    D = expm(beta * a.T - np.conj(beta) * a)
    P = np.diag((-1.0) ** np.arange(big))
    big_rho = np.zeros((big, big), dtype=complex)
    big_rho[:dim, :dim] = rho
    return 2 * np.real(np.trace(D @ P @ D.conj().T @ big_rho))


def random_rho(rng, dim, rank=3):
    v = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = v @ v.conj().T
    return rho / np.trace(rho)


def test_wigner_matches_dense_oracle(rng):
    rho = random_rho(rng, 12)
    for beta in (0.0, 0.3 - 0.2j, 1.1j, -1.4 + 0.8j):
        assert wigner_at(rho, beta) == pytest.approx(wigner_oracle(rho, beta), abs=1e-10)


def test_wigner_vacuum_and_cats():
    vac = np.zeros((4, 4))
    vac[0, 0] = 1
    assert wigner_at(vac, 0.0) == pytest.approx(2.0, abs=1e-8)
    for k, target in ((0, 2.0), (1, -2.0)):
        psi = cat_state(11.77, k).amplitudes
        assert wigner_at(np.outer(psi, psi.conj()), 0.0) == pytest.approx(target, abs=1e-6)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 4), st.floats(0, 2 * math.pi), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_wigner_coherent_gaussian(r, theta, dx, dy):
    alpha = r * np.exp(1j * theta)
    psi = coherent_state(alpha).amplitudes
    beta = alpha + dx + 1j * dy
    w = wigner_at(np.outer(psi, psi.conj()), beta)
    assert w == pytest.approx(2 * np.exp(-2 * abs(beta - alpha) ** 2), abs=1e-4)


def test_wigner_integral_and_grid():
    psi = coherent_state(1.5 + 0.5j).amplitudes
    fld = wigner(np.outer(psi, psi.conj()), center=1.5 + 0.5j, half_width=3.0, resolution=81)
    assert fld.values.shape == (81, 81)
    assert fld.integral() == pytest.approx(1.0, abs=1e-6)
    assert fld.betas[40, 40] == pytest.approx(1.5 + 0.5j)
    with pytest.raises(ValueError):
        wigner(np.eye(3) / 3, resolution=1)


def test_wigner_rejects_points_beyond_truncation():
    rho = np.eye(16) / 16
    with pytest.raises(TruncationError):
        wigner_at(rho, 20.0)
    with pytest.raises(ValueError):
        wigner_at(np.ones((2, 3)), 0.0)


def test_wigner_is_real_and_bounded(rng):
    rho = random_rho(rng, 30)
    vals = wigner(rho, 0, 4.0, 25).values
    assert np.all(np.isfinite(vals))
    assert np.max(np.abs(vals)) <= 2 + 1e-12


def test_average_fidelity_at_zero_and_determinism():
    x1 = special_point(1).x
    N = 100.0
    c = coefficients_at(x1, N)
    p = ModelParams(eta=c.eta, n_max=default_truncation(N))
    t_h = time_scales(c).t_h
    times = np.array([0.0, 0.5 * t_h, t_h])
    a = average_fidelity_curve(p, N, "linear", times, samples=20, seed=3)
    b = average_fidelity_curve(p, N, "linear", times, samples=20, seed=3)
    assert a.mean[0] == pytest.approx(1.0, abs=1e-8)
    np.testing.assert_array_equal(a.mean, b.mean)
    assert np.all(a.stderr >= 0)


def test_average_fidelity_quadratic_at_zero():
    x2 = special_point(2).x
    N = 100.0
    p = ModelParams(eta=coefficients_at(x2, N).eta, n_max=default_truncation(N))
    curve = average_fidelity_curve(p, N, "quadratic", [0.0], samples=10)
    assert curve.mean[0] == pytest.approx(1.0, abs=1e-8)


def test_average_fidelity_linear_improves_with_N():
    x1 = special_point(1).x
    prev = 0.0
    for N in (100.0, 400.0, 1600.0):
        c = coefficients_at(x1, N)
        p = ModelParams(eta=c.eta, n_max=default_truncation(N))
        f = average_fidelity_curve(p, N, "linear", [time_scales(c).t_r], samples=40).mean[0]
        assert f > prev
        prev = f


def test_average_fidelity_inapplicable_regime():
    x1 = special_point(1).x
    N = 100.0
    p = ModelParams(eta=coefficients_at(x1, N).eta, n_max=default_truncation(N))
    with pytest.raises(RegimeError):
        average_fidelity_curve(p, N, "quadratic", [1.0], samples=2)
    with pytest.raises(ValueError):
        average_fidelity_curve(p, N, "cubic", [1.0], samples=2)


def test_inversion_curve_start_collapse_revival():
    x1 = special_point(1).x
    N = 400.0
    c = coefficients_at(x1, N)
    t_r = time_scales(c).t_r
    p = ModelParams(eta=c.eta, n_max=default_truncation(N))
    t, w_exact, w_approx = inversion_curve(p, N, [0.0])
    assert (w_exact[0], w_approx[0]) == pytest.approx((1.0, 1.0))
    _, w_col, _ = inversion_curve(p, N, np.linspace(0.2 * t_r, 0.8 * t_r, 400))
    assert np.max(np.abs(w_col)) <= 0.02
    _, w_rev, _ = inversion_curve(p, N, np.arange(0.95 * t_r, 1.05 * t_r, 0.05))
    assert w_rev.max() >= 0.9
