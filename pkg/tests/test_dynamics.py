import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from iontrap_revivals.dynamics import (
    ModelParams,
    eigenfrequency,
    evolve_exact,
    expectation_I,
    frequency_table,
    population_inversion,
    propagate,
)
from iontrap_revivals.hilbert import (
    EXCITED,
    GROUND,
    ElectronicState,
    JointState,
    coherent_state,
    fock_state,
    joint_product,
)
from iontrap_revivals.specfun import bessel_j1


def random_joint(rng, n_max):
    a = rng.normal(size=(2, n_max + 1)) + 1j * rng.normal(size=(2, n_max + 1))
    return JointState(a / np.linalg.norm(a))


def dense_hamiltonian(p):
    # basis index l * (n_max + 1) + n, l = 0 (g), 1 (e)
    dim = p.n_max + 1
    w = frequency_table(p)
    H = np.zeros((2 * dim, 2 * dim))
    for n in range(1, dim):
        H[dim + n - 1, n] = H[n, dim + n - 1] = w[n]
    return H


def test_frequency_n1_closed_form():
    p = ModelParams(eta=0.1, n_max=5)
    assert eigenfrequency(1, p) == pytest.approx(0.1 * math.exp(-0.005), abs=1e-12)


def test_frequency_bessel_near_x1():
    p = ModelParams(eta=0.1, n_max=300, freq_method="bessel_approx")
    # x = 9.96 sits just past x_1, where h has already dropped by ~5e-4
    assert eigenfrequency(249, p) == pytest.approx(0.2795, abs=1e-3)
    assert eigenfrequency(249, p) == pytest.approx(0.27893456, abs=1e-8)
    assert eigenfrequency(249, p) == pytest.approx(bessel_j1(2 * 0.1 * math.sqrt(249)))


def test_frequency_methods_agree_for_small_eta():
    a = eigenfrequency(100, ModelParams(eta=0.05, n_max=120))
    b = eigenfrequency(100, ModelParams(eta=0.05, n_max=120, freq_method="bessel_approx"))
    assert abs(a - b) <= 5e-4 * abs(a)


@pytest.mark.parametrize("eta", [0.05, 0.2, 0.45])
def test_frequency_matches_displacement_matrix_element(eta):
    # |omega_n| = |<n-1| exp(i eta (a + a^dag)) |n>| from a large dense truncation
    big = 160
    a = np.diag(np.sqrt(np.arange(1, big)), 1)
    D = expm(1j * eta * (a + a.T))
    p = ModelParams(eta=eta, n_max=60)
    w = frequency_table(p)
    ref = np.abs([D[n - 1, n] for n in range(1, 61)])
    np.testing.assert_allclose(np.abs(w[1:]), ref, rtol=1e-9, atol=1e-14)


def test_eigenfrequency_range():
    p = ModelParams(eta=0.1, n_max=10)
    with pytest.raises(ValueError):
        eigenfrequency(0, p)
    with pytest.raises(ValueError):
        eigenfrequency(11, p)


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(eta=0.1, n_max=10, freq_method="nope")
    with pytest.raises(ValueError):
        ModelParams(eta=0.0, n_max=10)
    with pytest.raises(ValueError):
        ModelParams(eta=0.1, n_max=10, omega=-1.0)


def test_propagate_matches_dense_expm(rng):
    p = ModelParams(eta=0.23, n_max=25)
    H = dense_hamiltonian(p)
    s0 = random_joint(rng, p.n_max)
    for t in (0.0, 1.7, -42.0, 913.2):
        ref = expm(-1j * H * t) @ s0.amplitudes.ravel()
        np.testing.assert_allclose(evolve_exact(s0, t, p).amplitudes.ravel(), ref, atol=1e-10)


def test_trivial_evolutions():
    p = ModelParams(eta=0.1, n_max=12)
    s0 = joint_product(ElectronicState.from_unnormalized(1, 2j), coherent_state(1.1, 12, leakage_tol=1e-4))
    np.testing.assert_array_equal(evolve_exact(s0, 0.0, p).amplitudes, s0.amplitudes)
    g0 = joint_product(GROUND, fock_state(0, 12))
    np.testing.assert_allclose(evolve_exact(g0, 123.4, p).amplitudes, g0.amplitudes)
    e0 = joint_product(EXCITED, fock_state(0, 12))
    t = math.pi / (2 * eigenfrequency(1, p))
    target = np.zeros((2, 13), dtype=complex)
    target[0, 1] = -1j
    np.testing.assert_allclose(evolve_exact(e0, t, p).amplitudes, target, atol=1e-12)


def test_propagate_shape():
    p = ModelParams(eta=0.1, n_max=8)
    out = propagate(joint_product(GROUND, fock_state(3, 8)), np.linspace(0, 1, 5), p)
    assert out.shape == (5, 2, 9)
    with pytest.raises(ValueError):
        propagate(joint_product(GROUND, fock_state(3, 9)), [0.0], p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.02, 0.6), st.integers(2, 60),
       st.floats(-1e3, 1e3), st.floats(-1e3, 1e3), st.sampled_from(["laguerre_exact", "bessel_approx"]))
def test_unitarity_composition_and_I(seed, eta, n_max, t1, t2, method):
    p = ModelParams(eta=eta, n_max=n_max, freq_method=method)
    s0 = random_joint(np.random.default_rng(seed), n_max)
    s1 = evolve_exact(s0, t1, p)
    assert abs(s1.norm - 1.0) <= 1e-9
    assert abs(expectation_I(s1) - expectation_I(s0)) <= 1e-10
    both = evolve_exact(s1, t2, p)
    np.testing.assert_allclose(both.amplitudes, evolve_exact(s0, t1 + t2, p).amplitudes, atol=1e-9)
    back = evolve_exact(s1, -t1, p)
    np.testing.assert_allclose(back.amplitudes, s0.amplitudes, atol=1e-9)


def test_population_inversion_and_I():
    mode = coherent_state(2.0)
    assert population_inversion(joint_product(EXCITED, mode)) == 1.0
    assert population_inversion(joint_product(GROUND, mode)) == -1.0
    a = np.zeros((2, 2), dtype=complex)
    a[0, 0] = a[1, 1] = 1 / math.sqrt(2)
    assert population_inversion(JointState(a)) == pytest.approx(0.0)
    assert expectation_I(joint_product(EXCITED, fock_state(0, 3))) == 1.0
    assert expectation_I(joint_product(GROUND, coherent_state(10.0))) == pytest.approx(100.0, abs=1e-6)


def test_population_inversion_on_stack():
    p = ModelParams(eta=0.1, n_max=50)
    out = propagate(joint_product(EXCITED, coherent_state(3.0, 50)), [0.0, 5.0], p)
    w = population_inversion(out)
    assert w.shape == (2,)
    assert w[0] == pytest.approx(1.0)
