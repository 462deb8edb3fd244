import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from core.services.errors import DomainError, SingularityError
from core.services.moebius import Automorphism
from core.services.series import (
    TruncatedSeries, add, binomial_power, compose, derivative, evaluate, mul, power_matrix,
    powers_of, reciprocal, scale,
)

coefficient = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)
coefficients = st.lists(coefficient, min_size=1, max_size=12)


class SeriesArithmeticTests(SimpleTestCase):
    def test_coefficients_are_read_only(self):
        f = TruncatedSeries([1, 2, 3])
        with self.assertRaises(ValueError):
            f.coeffs[0] = 5

    def test_empty_series_is_rejected(self):
        with self.assertRaises(DomainError):
            TruncatedSeries([])

    def test_product_keeps_the_shorter_truncation(self):
        f = TruncatedSeries([1, 1, 1])
        g = TruncatedSeries([1, -1, 0, 0, 0])
        h = mul(f, g)
        self.assertEqual(h.N, 3)
        np.testing.assert_array_equal(h.coeffs, [1, 0, 0])

    def test_operators_delegate(self):
        f = TruncatedSeries([1, 2])
        g = TruncatedSeries([3, 4, 5])
        np.testing.assert_array_equal((f + g).coeffs, [4, 6])
        np.testing.assert_array_equal((f * g).coeffs, [3, 10])

    def test_degree_and_resize(self):
        f = TruncatedSeries([1, 0, 2, 0, 0])
        self.assertEqual(f.degree, 2)
        self.assertEqual(f.resized(7).N, 7)
        np.testing.assert_array_equal(f.resized(2).coeffs, [1, 0])

    def test_derivative(self):
        np.testing.assert_array_equal(derivative(TruncatedSeries([1, 2, 3])).coeffs, [2, 6])
        np.testing.assert_array_equal(derivative(TruncatedSeries([4])).coeffs, [0])

    def test_reciprocal_of_one_minus_z_is_geometric(self):
        g = reciprocal(TruncatedSeries([1, -1]), 10)
        np.testing.assert_array_equal(g.coeffs, np.ones(10))

    def test_reciprocal_needs_a_constant_term(self):
        with self.assertRaises(SingularityError):
            reciprocal(TruncatedSeries([0, 1]), 5)

    def test_binomial_power(self):
        g = binomial_power(0.5, 2.0, 12)
        n = np.arange(12)
        np.testing.assert_allclose(g.coeffs, (n + 1) * 0.5 ** n, rtol=1e-15)
        with self.assertRaises(DomainError):
            binomial_power(1.0, 2.0, 4)

    def test_rotated(self):
        f = TruncatedSeries([1, 1, 1])
        np.testing.assert_allclose(f.rotated(1j).coeffs, [1, 1j, -1], atol=1e-15)

    def test_powers_need_a_self_map(self):
        with self.assertRaises(DomainError):
            powers_of(TruncatedSeries([1.0, 0.1]), 8, 3)
        with self.assertRaises(DomainError):
            powers_of(TruncatedSeries([0.0, 1.0]), 8, 0)

    def test_power_matrix_columns(self):
        M = power_matrix(TruncatedSeries([0.5, 1.0]), 4, 3)
        np.testing.assert_allclose(M[:, 2], [0.25, 1.0, 1.0, 0.0])

    def test_composition_with_an_automorphism(self):
        aut = Automorphism(1.0, 0.5)
        f = TruncatedSeries([1.0, -2.0, 3.0])
        composed = compose(f, aut.taylor(64), 64)
        z = 0.3 - 0.2j
        w = aut.apply(z)
        self.assertAlmostEqual(evaluate(composed, z), 1.0 - 2.0 * w + 3.0 * w ** 2, places=12)

    def test_to_json(self):
        self.assertEqual(TruncatedSeries([1, 2j]).to_json(), {"re": [1.0, 0.0], "im": [0.0, 2.0]})


class SeriesRingLawTests(SimpleTestCase):
    @settings(max_examples=60, deadline=None)
    @given(coefficients, coefficients)
    def test_product_commutes(self, a, b):
        f, g = TruncatedSeries(a), TruncatedSeries(b)
        np.testing.assert_allclose(mul(f, g).coeffs, mul(g, f).coeffs, rtol=1e-12, atol=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(coefficients, coefficients, coefficients)
    def test_product_distributes_over_sum(self, a, b, c):
        f, g, h = TruncatedSeries(a), TruncatedSeries(b), TruncatedSeries(c)
        lhs = mul(f, add(g, h))
        rhs = add(mul(f, g), mul(f, h))
        np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, rtol=1e-12, atol=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(coefficients, st.integers(min_value=1, max_value=20))
    def test_reciprocal_inverts(self, a, N):
        f = TruncatedSeries([1.0] + a)
        g = reciprocal(f, N)
        one = mul(f.resized(N), g)
        expected = np.zeros(N, dtype=complex)
        expected[0] = 1.0
        scale_ = max(1.0, float(np.max(np.abs(g.coeffs))))
        np.testing.assert_allclose(one.coeffs, expected, atol=1e-9 * scale_)

    @settings(max_examples=40, deadline=None)
    @given(coefficients, coefficient)
    def test_scale_is_linear(self, a, c):
        f = TruncatedSeries(a)
        np.testing.assert_allclose(scale(add(f, f), c).coeffs, 2 * c * f.coeffs, rtol=1e-12, atol=1e-9)
