import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univalence import series as S
from univalence.errors import NonUnitConstantTerm, NotNormalized, OutsideDisk
from univalence.series import Series

from helpers import random_polynomial

coef = st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False)


def test_from_coeffs_pads_and_truncates():
    s = Series.from_coeffs([0, 1, 2], 5)
    assert s.order == 5
    assert list(s.coeffs) == [0, 1, 2, 0, 0, 0]
    assert Series.from_coeffs([0, 1, 2, 3], 2).order == 2


def test_series_is_read_only():
    s = S.identity()
    with pytest.raises(ValueError):
        s.coeffs[0] = 1


def test_normalization():
    assert S.koebe(8).is_normalized
    assert not Series.from_coeffs([0, 2]).is_normalized
    with pytest.raises(NotNormalized):
        Series.from_coeffs([1, 1]).require_normalized()


@given(st.lists(coef, min_size=1, max_size=12), st.lists(coef, min_size=1, max_size=12))
def test_multiply_matches_polynomial_product(a, b):
    n = min(len(a), len(b)) - 1
    got = S.multiply(Series.from_coeffs(a), Series.from_coeffs(b)).coeffs
    want = np.polynomial.polynomial.polymul(np.array(a), np.array(b))[: n + 1]
    assert got.size == n + 1
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_hadamard_is_coefficientwise():
    a, b = Series.from_coeffs([1, 2, 3]), Series.from_coeffs([4, 5, 6, 7])
    assert list(S.hadamard(a, b).coeffs) == [4, 10, 18]


def test_calculus_round_trip():
    f = random_polynomial(np.random.default_rng(1), 10, 1.0)
    np.testing.assert_allclose(S.differentiate(S.integrate_from_zero(f)).coeffs, f.coeffs, atol=1e-15)
    np.testing.assert_allclose(S.z_differentiate(f).coeffs, np.arange(11) * f.coeffs)
    assert S.differentiate(f).order == 9
    assert S.integrate_from_zero(f).order == 11


def test_shift_down_requires_zero_constant():
    with pytest.raises(ValueError):
        S.shift_down(Series.from_coeffs([1, 1]))
    assert list(S.shift_up(S.shift_down(S.koebe(4))).coeffs) == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("gamma", [0.5, -1, 2.5 - 0.7j, 1j, 3])
def test_complex_power_against_mpmath_taylor(gamma):
    a = [1, 0.3 - 0.2j, -0.1j, 0.05]
    u = Series.from_coeffs(a, 20)
    got = S.complex_power(u, gamma).coeffs
    mpmath.mp.dps = 30
    fn = lambda x: (a[0] + a[1] * x + a[2] * x**2 + a[3] * x**3) ** gamma
    want = np.array([complex(c) for c in mpmath.taylor(fn, 0, 20)])
    np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-13)


def test_complex_power_edge_cases():
    u = Series.from_coeffs([1, 0.5], 6)
    assert list(S.complex_power(u, 0).coeffs) == [1, 0, 0, 0, 0, 0, 0]
    assert S.complex_power(u, 1) is u or np.array_equal(S.complex_power(u, 1).coeffs, u.coeffs)
    with pytest.raises(NonUnitConstantTerm):
        S.complex_power(Series.from_coeffs([2, 1]), 0.5)


def test_log_exp_inverse():
    a = Series.from_coeffs([0, 0.4, -0.2j, 0.1], 30)
    np.testing.assert_allclose(S.log_unit(S.exp_series(a)).coeffs, a.coeffs, atol=1e-14)


def test_evaluate_and_jet():
    f = S.geometric(400)
    z = np.array([0.3, -0.2 + 0.4j])
    j = S.jet(f, z, 2)
    np.testing.assert_allclose(j[0], z / (1 - z), rtol=1e-13)
    np.testing.assert_allclose(j[1], 1 / (1 - z) ** 2, rtol=1e-13)
    np.testing.assert_allclose(j[2], 2 / (1 - z) ** 3, rtol=1e-12)
    assert S.jet(f, 0.5, 1).shape == (2,)
    with pytest.raises(OutsideDisk):
        S.jet(f, 1.0)


def test_builtins():
    np.testing.assert_allclose(S.exp_normalized(30)(0.5), np.exp(0.5) - 1, rtol=1e-15)
    np.testing.assert_allclose(S.koebe(2000)(0.4), 0.4 / 0.6**2, rtol=1e-14)
    assert S.builtin("identity").order == S.DEFAULT_ORDER
    with pytest.raises(ValueError):
        S.builtin("sine")


def test_adequate_order_bounds_tail():
    for r, p in [(0.999, 1), (0.95, 1), (0.9, 0)]:
        n = S.adequate_order(r, p)
        assert n ** (p + 1) * r**n <= 1e-12
        assert (n * 0.7) ** (p + 1) * r ** (n * 0.7) > 1e-12
    assert S.builtin("koebe", radius=0.999).order == S.adequate_order(0.999, 1)


@settings(max_examples=30)
@given(st.lists(coef, min_size=2, max_size=10), st.complex_numbers(max_magnitude=0.9))
def test_evaluate_matches_horner(c, z):
    if abs(z) >= 0.9:
        return
    f = Series.from_coeffs(c)
    assert abs(f(z) - np.polyval(np.array(c[::-1]), z)) <= 1e-12 * (1 + sum(abs(x) for x in c))
