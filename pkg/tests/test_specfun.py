import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crackimaging.imaging import psf_closed_form
from crackimaging.scene import make_directions
from crackimaging.specfun import bessel_j0, bessel_j1, circle_sum, quadrature_oracle_psf

mpmath.mp.dps = 50


def series_oracle(order, z):
    """Ascending series at 50 digits, summed until terms vanish."""
    z = mpmath.mpf(z)
    term = (z / 2) ** order / math.factorial(order)
    total = term
    k = 0
    while abs(term) > mpmath.mpf(10) ** -45:
        k += 1
        term *= -(z * z / 4) / (k * (k + order))
        total += term
    return total


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo, flo = mid, f(mid)
        else:
            hi = mid
    return (lo + hi) / 2


def test_oracle_zeros_match_quoted_constants():
    j0_zero = bisect(lambda z: series_oracle(0, z), mpmath.mpf(2), mpmath.mpf(3))
    j1_zero = bisect(lambda z: series_oracle(1, z), mpmath.mpf(3), mpmath.mpf(4.5))
    # J1 maximum: J1' = J0 - J1/z changes sign
    j1_max = bisect(lambda z: series_oracle(0, z) - series_oracle(1, z) / z,
                    mpmath.mpf(1), mpmath.mpf(2.5))
    assert float(j0_zero) == pytest.approx(2.404825557695773, abs=1e-15)
    assert float(j1_zero) == pytest.approx(3.8317059702075123, abs=1e-15)
    assert float(j1_max) == pytest.approx(1.8411837813406593, abs=1e-15)
    assert float(series_oracle(0, j1_zero)) == pytest.approx(-0.40275939570255315, abs=1e-15)
    assert float(series_oracle(1, j1_max)) == pytest.approx(0.5818652242815964, abs=1e-15)


def test_j0_examples():
    assert bessel_j0(0.0) == 1.0
    assert abs(bessel_j0(2.404825557695773)) <= 1e-9
    assert bessel_j0(3.8317059702075123) == pytest.approx(-0.40275939570255315, abs=1e-8)


def test_j1_examples():
    assert bessel_j1(0.0) == 0.0
    assert abs(bessel_j1(3.8317059702075123)) <= 1e-9
    assert bessel_j1(1.8411837813406593) == pytest.approx(0.5818652242815964, abs=1e-10)


@pytest.mark.parametrize("order, fn", [(0, bessel_j0), (1, bessel_j1)])
def test_accuracy_against_mpmath(order, fn):
    z = np.concatenate([np.linspace(-100, 100, 4001), np.linspace(11.9, 12.1, 201)])
    ref = np.array([float(mpmath.besselj(order, v)) for v in z])
    assert np.max(np.abs(fn(z) - ref)) <= 1e-10


def test_global_bounds():
    z = np.linspace(-100, 100, 20001)
    assert np.all(np.abs(bessel_j0(z)) <= 1.0)
    assert np.all(np.abs(bessel_j1(z)) <= 0.59)


def test_parity_on_samples():
    z = np.random.default_rng(7).uniform(0, 100, 100)
    np.testing.assert_allclose(bessel_j0(-z), bessel_j0(z), rtol=0, atol=1e-12)
    np.testing.assert_allclose(bessel_j1(-z), -bessel_j1(z), rtol=0, atol=1e-12)


@given(st.floats(-100, 100))
def test_parity_property(z):
    assert abs(bessel_j0(-z) - bessel_j0(z)) <= 1e-12
    assert abs(bessel_j1(-z) + bessel_j1(z)) <= 1e-12


@given(st.floats(0.01, 60))
def test_antiderivative_identity(z):
    def g(t):
        return t * t / 2 * (bessel_j0(t) ** 2 + bessel_j1(t) ** 2)

    h = 1e-4
    deriv = (g(z + h) - g(z - h)) / (2 * h)
    assert deriv == pytest.approx(z * bessel_j0(z) ** 2, abs=1e-6)


def test_scalar_and_array_returns():
    assert isinstance(bessel_j0(1.0), float)
    assert bessel_j1(np.zeros((2, 3))).shape == (2, 3)


@pytest.mark.parametrize("n", [2, 4, 12, 64])
def test_circle_sum_origin(n):
    assert circle_sum((0.0, 0.0), 12.3, make_directions(n)) == 1.0


def test_circle_sum_at_j0_zero():
    omega = 10.0
    y = (2.404825557695773 / omega) * np.array([math.cos(0.3), math.sin(0.3)])
    assert abs(circle_sum(y, omega, make_directions(64))) <= 1e-8


def test_circle_sum_small_n_departs_from_j0():
    omega = 7.0
    dirs = make_directions(4)
    for angle in (0.0, 0.4, 1.1):
        y = (5.0 / omega) * np.array([math.cos(angle), math.sin(angle)])
        brute = sum(np.exp(1j * omega * (t @ y)) for t in dirs.vectors) / 4
        cs = circle_sum(y, omega, dirs)
        assert cs == pytest.approx(brute, abs=1e-14)
        assert abs(cs - bessel_j0(5.0)) > 0.05


@settings(max_examples=60)
@given(st.floats(0, 3), st.floats(0, 2 * math.pi), st.floats(1, 20))
def test_circle_sum_converges_for_large_n(r, angle, omega):
    n = 2 * math.ceil(omega * r) + 16
    n += n % 2
    y = r * np.array([math.cos(angle), math.sin(angle)])
    assert abs(circle_sum(y, omega, make_directions(n)) - bessel_j0(omega * r)) <= 1e-8


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-math.pi, math.pi), st.integers(1, 20))
def test_circle_sum_rotation_invariance(x, y, phi, half):
    dirs = make_directions(2 * half)
    rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    rotated = type(dirs)(dirs.vectors @ rot.T)
    a = circle_sum((x, y), 9.0, dirs)
    b = circle_sum(rot @ np.array([x, y]), 9.0, rotated)
    assert abs(a - b) <= 1e-12


W1, WK = 2 * math.pi / 0.6, 2 * math.pi / 0.4


def test_quadrature_trivial_cases():
    assert quadrature_oracle_psf(0.0, W1, WK, 2) == pytest.approx((WK**2 - W1**2) / 2, abs=1e-12)
    assert quadrature_oracle_psf(0.7, W1, W1, 8) == 0.0
    with pytest.raises(ValueError, match="even"):
        quadrature_oracle_psf(1.0, W1, WK, 7)


def test_quadrature_fourth_order_convergence():
    exact = quadrature_oracle_psf(1.0, W1, WK, 8192)
    errs = [abs(quadrature_oracle_psf(1.0, W1, WK, p) - exact) for p in (32, 64, 128)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 12 < coarse / fine < 20


def test_quadrature_matches_closed_form_at_unit_radius():
    quad = quadrature_oracle_psf(1.0, W1, WK, 4096) / (4 * math.pi**2)
    assert psf_closed_form(1.0, W1, WK) == pytest.approx(quad, abs=1e-8)
