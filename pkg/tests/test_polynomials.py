"""Recurrence coefficients, evaluation, norms, invariant measure.

Expected values marked "hand" below were computed independently by direct
substitution into the closed forms (and, for the t-step cases elsewhere,
by path enumeration); they are frozen here rather than recomputed so the
tests cannot drift with the code under test.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jacobi_walk import (
    ModelParams,
    eval_poly,
    invariant_measure,
    monomial_coefficients,
    norm_squared,
    poly_product,
    poly_table,
    step_coefficients,
    total_mass,
    urn_step_probabilities,
    weight,
)

F = Fraction

params_strategy = st.tuples(st.integers(0, 8), st.integers(0, 8)).map(
    lambda ab: ModelParams(*ab)
)


class TestModelParams:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            ModelParams(-1, 0)
        with pytest.raises(ValueError):
            ModelParams(0, -1.5)

    def test_rejects_non_numbers(self):
        with pytest.raises(TypeError):
            ModelParams("2", 0)
        with pytest.raises(TypeError):
            ModelParams(True, 0)

    def test_integer_valued_floats_canonicalized(self):
        p = ModelParams(2.0, 0.0)
        assert p.is_integral and p.alpha == 2 and isinstance(p.alpha, int)

    def test_fractional_params_are_float_only(self):
        p = ModelParams(0.5, 1.25)
        assert not p.is_integral
        with pytest.raises(ValueError):
            p.require_integral("test")
        with pytest.raises(ValueError):
            step_coefficients(1, p, "exact")

    def test_negative_exponents_above_minus_one_allowed(self):
        p = ModelParams(-0.5, -0.5)
        c = step_coefficients(0, p, "float")
        assert c.up + c.stay == pytest.approx(1.0)


class TestStepCoefficients:
    def test_base_case(self):
        # hand: a=b=0 gives up_0 = stay_0 = 1/2
        c = step_coefficients(0, ModelParams(0, 0), "exact")
        assert (c.up, c.stay, c.down) == (F(1, 2), F(1, 2), F(0))

    def test_state_one(self):
        # hand: a=b=0, n=1 -> (1/3, 1/2, 1/6)
        c = step_coefficients(1, ModelParams(0, 0), "exact")
        assert (c.up, c.stay, c.down) == (F(1, 3), F(1, 2), F(1, 6))

    def test_asymmetric_params(self):
        # hand: a=2, b=1, n=3: up = 5*7/(10*11), down = 3*5/(9*10)
        c = step_coefficients(3, ModelParams(2, 1), "exact")
        assert c.up == F(35, 110)
        assert c.down == F(15, 90)
        assert c.total == 1

    def test_origin_base_with_params(self):
        # hand: stay_0 = (a+1)/(a+b+2); down_0 = 0 always
        c = step_coefficients(0, ModelParams(3, 5), "exact")
        assert c.stay == F(4, 10)
        assert c.down == 0

    def test_rejects_negative_state(self):
        with pytest.raises(ValueError):
            step_coefficients(-1, ModelParams(0, 0))

    @given(st.integers(0, 200), params_strategy)
    def test_exact_law_sums_to_one(self, n, params):
        c = step_coefficients(n, params, "exact")
        assert c.total == 1
        assert c.up > 0 and c.stay >= 0 and c.down >= 0
        assert (c.down == 0) == (n == 0)

    @given(st.integers(0, 200), params_strategy)
    def test_urn_form_matches_recurrence_form(self, n, params):
        assert urn_step_probabilities(n, params, "exact") == step_coefficients(
            n, params, "exact"
        )

    @given(st.integers(0, 100), params_strategy)
    def test_float_shadows_exact(self, n, params):
        cf = step_coefficients(n, params, "float")
        ce = step_coefficients(n, params, "exact")
        for name in ("up", "stay", "down"):
            assert getattr(cf, name) == pytest.approx(float(getattr(ce, name)), abs=1e-15)

    def test_float_urn_form(self):
        cf = urn_step_probabilities(5, ModelParams(1, 2), "float")
        ce = urn_step_probabilities(5, ModelParams(1, 2), "exact")
        assert cf.up == pytest.approx(float(ce.up), abs=1e-15)
        assert cf.down == pytest.approx(float(ce.down), abs=1e-15)


class TestEvalPoly:
    def test_degree_zero_is_one(self):
        assert eval_poly(0, F(3, 7), ModelParams(2, 1), "exact") == 1
        assert eval_poly(0, 0.37, ModelParams(2, 1), "float") == 1.0

    def test_normalized_at_one(self):
        for n in (1, 4, 9):
            assert eval_poly(n, 1, ModelParams(2, 3), "exact") == 1

    def test_degree_one(self):
        # hand: Q_1(x) = (x - stay_0)/up_0; a=b=0 -> 2x - 1
        assert eval_poly(1, F(1, 4), ModelParams(0, 0), "exact") == F(-1, 2)
        assert eval_poly(1, 0, ModelParams(0, 0), "exact") == -1

    def test_matches_monomial_expansion(self):
        params = ModelParams(1, 2)
        x = F(2, 5)
        for n in (2, 5, 8):
            coeffs = monomial_coefficients(n, params)
            direct = sum(c * x**k for k, c in enumerate(coeffs))
            assert eval_poly(n, x, params, "exact") == direct

    @pytest.mark.parametrize("n", [50, 200, 500])
    @pytest.mark.parametrize("ab", [(0, 0), (3, 1)])
    def test_float_recursion_accuracy_high_degree(self, n, ab):
        params = ModelParams(*ab)
        for x in (F(3, 25), F(1, 2), F(93, 100)):
            exact = eval_poly(n, x, params, "exact")
            got = eval_poly(n, float(x), params, "float")
            assert abs(got - float(exact)) <= 1e-9 * max(1.0, abs(float(exact)))

    def test_table_matches_scalar(self):
        params = ModelParams(2, 0)
        xs = [0.0, 0.125, 0.5, 0.875, 1.0]
        table = poly_table(6, xs, params)
        assert table.shape == (7, 5)
        for n in range(7):
            for k, x in enumerate(xs):
                assert table[n, k] == pytest.approx(eval_poly(n, x, params, "float"), rel=1e-15)


class TestMonomialCoefficients:
    def test_low_degrees(self):
        params = ModelParams(0, 0)
        assert monomial_coefficients(0, params) == (1,)
        assert monomial_coefficients(1, params) == (-1, 2)

    @given(st.integers(0, 25), st.tuples(st.integers(0, 5), st.integers(0, 5)))
    def test_coefficients_sum_to_one(self, n, ab):
        # Q_n(1) = 1 under this normalization
        assert sum(monomial_coefficients(n, ModelParams(*ab))) == 1

    def test_product_convolution(self):
        a = (F(1), F(2))  # 1 + 2x
        b = (F(-1), F(0), F(3))  # -1 + 3x^2
        assert poly_product(a, b) == (F(-1), F(-2), F(3), F(6))


class TestNormSquared:
    def test_legendre_pattern(self):
        # hand: a=b=0 gives 1/(2i+1)
        params = ModelParams(0, 0)
        for i in range(10):
            assert norm_squared(i, params, "exact") == F(1, 2 * i + 1)

    def test_degree_zero_is_total_mass(self):
        # hand: B(a+1, b+1) = a! b! / (a+b+1)!
        params = ModelParams(2, 1)
        assert norm_squared(0, params, "exact") == F(2 * 1, 24) == total_mass(params, "exact")

    def test_hand_value(self):
        # hand: i=1, a=1, b=1: 1!2!1!^2 / (2!3!5) = 2/60
        assert norm_squared(1, ModelParams(1, 1), "exact") == F(1, 30)

    @pytest.mark.parametrize("i", [0, 1, 7, 23, 50])
    @pytest.mark.parametrize("ab", [(0, 0), (2, 5), (6, 6), (5, 0)])
    def test_float_product_form_accuracy(self, i, ab):
        params = ModelParams(*ab)
        exact = norm_squared(i, params, "exact")
        got = norm_squared(i, params, "float")
        assert abs(got - float(exact)) <= 1e-13 * float(exact)

    def test_real_params_via_gamma(self):
        # a=b=-1/2 (Chebyshev weight on [0,1]): mass = pi
        assert total_mass(ModelParams(-0.5, -0.5), "float") == pytest.approx(np.pi, rel=1e-14)


class TestInvariantMeasure:
    def test_legendre_pattern(self):
        params = ModelParams(0, 0)
        assert [invariant_measure(i, params, "exact") for i in range(4)] == [1, 3, 5, 7]

    def test_is_norm_ratio(self):
        params = ModelParams(3, 2)
        for i in range(8):
            assert invariant_measure(i, params, "exact") == norm_squared(
                0, params, "exact"
            ) / norm_squared(i, params, "exact")

    def test_float_shadows_exact(self):
        params = ModelParams(2, 4)
        for i in (0, 1, 5, 20, 60):
            exact = invariant_measure(i, params, "exact")
            assert invariant_measure(i, params, "float") == pytest.approx(
                float(exact), rel=1e-12
            )


class TestWeight:
    def test_exact_on_rationals(self):
        assert weight(F(1, 2), ModelParams(1, 2)) == F(1, 8)
        assert weight(F(1, 4), ModelParams(0, 0)) == 1

    def test_endpoint_values(self):
        params = ModelParams(2, 3)
        assert weight(0, params) == 0
        assert weight(1, params) == 0
        assert weight(0.0, ModelParams(0, 0)) == 1

    def test_float_and_real_exponents(self):
        assert weight(0.25, ModelParams(1, 1)) == pytest.approx(0.1875)
        assert weight(0.25, ModelParams(0.5, 0.0)) == pytest.approx(0.5)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            weight(1.5, ModelParams(0, 0))
        with pytest.raises(ValueError):
            weight(F(-1, 10), ModelParams(0, 0))
