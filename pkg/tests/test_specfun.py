import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from iontrap_revivals.specfun import (
    LAGUERRE_MAX_DEGREE,
    bessel_j1,
    find_special_points,
    h_derivative,
    h_derivatives,
    laguerre_assoc,
    laguerre_table,
)


def laguerre_oracle(n, k, x):
    # finite sum, 50 digits
    with mpmath.workdps(50):
        x = mpmath.mpf(x)
        return sum(
            (-1) ** i * mpmath.binomial(n + k, n - i) * x**i / mpmath.factorial(i)
            for i in range(n + 1)
        )


def j1_series(x, terms=80):
    # alternating series; extended precision avoids cancellation for x ~ 10
    with mpmath.workdps(40):
        h = mpmath.mpf(x) / 2
        return float(sum((-1) ** m * h ** (2 * m + 1) / (mpmath.factorial(m) * mpmath.factorial(m + 1))
                         for m in range(terms)))


def test_laguerre_low_orders():
    assert laguerre_assoc(0, 1, 0.37) == 1.0
    assert laguerre_assoc(1, 1, 0.25) == pytest.approx(1.75, abs=1e-15)


def test_laguerre_against_extended_precision_sum():
    ref = float(laguerre_oracle(99, 1, "0.04"))
    assert laguerre_assoc(99, 1, 0.04) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("n,k,x", [(5, 0, 1.3), (30, 2, 0.7), (60, 1, 3.1), (12, 3, 9.0)])
def test_laguerre_table_matches_oracle(n, k, x):
    table = laguerre_table(n, k, x)
    ref = [float(laguerre_oracle(m, k, x)) for m in range(n + 1)]
    np.testing.assert_allclose(table, ref, rtol=1e-9, atol=1e-12)


def test_laguerre_degree_cap():
    with pytest.raises(ValueError):
        laguerre_assoc(LAGUERRE_MAX_DEGREE + 1, 1, 0.1)


def test_bessel_j1_values():
    assert bessel_j1(0.0) == 0.0
    assert bessel_j1(2.0) == pytest.approx(j1_series(2.0), abs=1e-14)
    assert bessel_j1(2.0) == pytest.approx(0.576725, abs=1e-6)
    assert bessel_j1(math.sqrt(9.9516)) == pytest.approx(0.279462, abs=5e-6)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 12.0))
def test_bessel_j1_power_series(x):
    assert bessel_j1(x) == pytest.approx(j1_series(x), abs=1e-12)


def test_h_derivative_table_values():
    assert h_derivative(0, 9.9516) == pytest.approx(0.279462, abs=5e-6)
    # printed x is rounded; the root lies at 19.01434
    assert h_derivative(1, 19.014) == pytest.approx(-0.035116, abs=5e-6)
    assert abs(h_derivative(2, 9.9516)) < 1e-6


def test_h_derivative_finite_differences(rng):
    xs = rng.uniform(0.2, 70.0, size=100)
    eps = 1e-4
    for k in range(1, 5):
        fd = (h_derivative(k - 1, xs + eps) - h_derivative(k - 1, xs - eps)) / (2 * eps)
        np.testing.assert_allclose(h_derivative(k, xs), fd, atol=1e-5)


def test_h_derivative_series_branch_is_continuous():
    # the small-x series and the closed form meet without a jump
    lo, hi = np.nextafter(0.5, 0), 0.5
    for k in range(5):
        assert h_derivative(k, lo) == pytest.approx(h_derivative(k, hi), rel=1e-10, abs=1e-14)


def test_h_derivative_rejects_bad_input():
    with pytest.raises(ValueError):
        h_derivative(5, 1.0)
    with pytest.raises(ValueError):
        h_derivative(0, -1.0)


def test_special_points_up_to_70():
    pts = find_special_points(70.0)
    np.testing.assert_allclose([p.x for p in pts], [9.9516, 19.014, 45.068, 64.469], atol=1e-3)
    assert [p.j for p in pts] == [1, 2, 3, 4]
    assert [p.kind for p in pts] == ["linear", "quadratic", "linear", "quadratic"]
    assert pts[3].h_derivs[4] == pytest.approx(3.9679e-6, abs=5e-11)


def test_special_points_polished_roots():
    # frozen oracle: bisection to 1e-12 then checked with scipy brentq
    from scipy.optimize import brentq

    pts = find_special_points(70.0)
    for p in pts:
        order = 2 if p.kind == "linear" else 3
        root = brentq(lambda x: h_derivative(order, x), p.x - 0.01, p.x + 0.01, xtol=1e-14)
        assert p.x == pytest.approx(root, abs=1e-10)
    np.testing.assert_allclose(
        [p.x for p in pts], [9.951605593, 19.014335458, 45.067517066, 64.469402169], atol=2e-9
    )


def test_special_points_empty_below_first_zero():
    assert find_special_points(5.0) == []


def test_h_derivatives_tuple():
    vals = h_derivatives(30.0)
    assert len(vals) == 5
    assert vals[0] == pytest.approx(bessel_j1(math.sqrt(30.0)))
