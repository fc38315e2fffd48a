import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sysmean import (
    DomainError,
    FamilyParams,
    SampleRealization,
    SingularityError,
    aux_mean,
    family_estimate,
    hh_mean,
    lambda_coefficient,
    product_estimate,
    ratio_estimate,
)


def make_realization(respondent_ys, subsample_ys, extra_nonrespondents=0, x=None):
    """Build a realization with the given observed study values."""
    n1, h2 = len(respondent_ys), len(subsample_ys)
    respondents = frozenset(range(1, n1 + 1))
    subsample = frozenset(range(n1 + 1, n1 + h2 + 1))
    nonrespondents = frozenset(range(n1 + 1, n1 + h2 + extra_nonrespondents + 1))
    units = tuple(sorted(respondents | nonrespondents))
    y_observed = dict(zip(sorted(respondents), respondent_ys))
    y_observed.update(zip(sorted(subsample), subsample_ys))
    x_observed = tuple(x) if x is not None else tuple(float(u) for u in units)
    return SampleRealization(
        sample_index=1,
        units=units,
        respondents=respondents,
        nonrespondents=nonrespondents,
        subsample=subsample,
        y_observed=y_observed,
        x_observed=x_observed,
    )


class TestHHMean:
    def test_weighted_combination(self):
        # n=4: two respondents averaging 3.0, two non-respondents whose
        # follow-up sub-sample (both of them) averages 5.0
        real = make_realization([2.5, 3.5], [4.0, 6.0])
        assert hh_mean(real) == pytest.approx((2 * 3.0 + 2 * 5.0) / 4)

    def test_full_response_reduces_to_sample_mean(self):
        real = make_realization([1.0, 2.0, 3.0, 4.0], [])
        assert hh_mean(real) == pytest.approx(2.5)

    def test_three_respondents(self):
        real = make_realization([1.0, 5.0, 9.0], [])
        assert hh_mean(real) == pytest.approx(5.0)

    def test_partial_followup_weights_by_n2(self):
        # n1=2 (mean 3.0), n2=2 but only one followed up (value 8.0)
        real = make_realization([2.0, 4.0], [8.0], extra_nonrespondents=1)
        assert hh_mean(real) == pytest.approx((2 * 3.0 + 2 * 8.0) / 4)

    def test_no_respondents_at_all(self):
        real = make_realization([], [4.0, 8.0])
        assert hh_mean(real) == pytest.approx(6.0)


class TestAuxMean:
    def test_simple_mean(self):
        real = make_realization([1.0, 2.0, 3.0], [], x=(2.0, 4.0, 6.0))
        assert aux_mean(real) == pytest.approx(4.0)

    def test_constant(self):
        real = make_realization([1.0, 2.0], [], x=(7.0, 7.0))
        assert aux_mean(real) == pytest.approx(7.0)


class TestFamilyEstimate:
    def test_alpha_zero_returns_input_unchanged(self):
        p = FamilyParams(alpha=0.0, g=3.7, a=2.0, b=-1.0)
        assert family_estimate(12.34, 5.0, 4.0, p) == 12.34

    def test_ratio_member(self):
        p = FamilyParams(alpha=1.0, g=1.0)
        assert family_estimate(10.0, 5.0, 4.0, p) == pytest.approx(8.0)

    def test_product_member(self):
        p = FamilyParams(alpha=1.0, g=-1.0)
        assert family_estimate(10.0, 5.0, 4.0, p) == pytest.approx(12.5)

    def test_zero_denominator(self):
        p = FamilyParams(alpha=2.0, g=1.0)  # 2*xbar - Xbar = 0
        with pytest.raises(SingularityError):
            family_estimate(10.0, 2.0, 4.0, p)

    def test_negative_base_with_non_integer_exponent(self):
        # denom = -3*6 + 4*3 = -6, so the bracket base is negative
        p = FamilyParams(alpha=-3.0, g=0.5)
        with pytest.raises(DomainError):
            family_estimate(10.0, 6.0, 3.0, p)

    def test_negative_base_with_integer_exponent(self):
        p = FamilyParams(alpha=-3.0, g=2.0)
        value = family_estimate(10.0, 6.0, 3.0, p)
        assert value == pytest.approx(10.0 * (-0.5) ** 2)

    def test_zero_exponent(self):
        p = FamilyParams(alpha=0.7, g=0.0)
        assert family_estimate(10.0, 6.0, 3.0, p) == 10.0

    def test_a_must_be_nonzero(self):
        with pytest.raises(DomainError):
            FamilyParams(alpha=1.0, a=0.0)

    def test_lambda_coefficient(self):
        assert lambda_coefficient(FamilyParams(alpha=0.0), 4.0) == 1.0
        assert lambda_coefficient(FamilyParams(alpha=0.0, a=1.0, b=4.0), 4.0) == pytest.approx(0.5)
        with pytest.raises(DomainError):
            lambda_coefficient(FamilyParams(alpha=0.0, a=1.0, b=-4.0), 4.0)


class TestClassicalEstimators:
    def test_ratio_hand_value(self):
        assert ratio_estimate(10.0, 5.0, 4.0) == pytest.approx(8.0)

    def test_product_hand_value(self):
        assert product_estimate(10.0, 5.0, 4.0) == pytest.approx(12.5)

    def test_calibration_identity(self):
        assert ratio_estimate(9.87, 4.0, 4.0) == 9.87
        assert product_estimate(9.87, 4.0, 4.0) == 9.87

    def test_ratio_zero_xbar(self):
        with pytest.raises(SingularityError):
            ratio_estimate(10.0, 0.0, 4.0)

    def test_product_zero_population_mean(self):
        with pytest.raises(SingularityError):
            product_estimate(10.0, 5.0, 0.0)

    def test_family_specialization_is_bit_for_bit(self, rng):
        ratio_params = FamilyParams(alpha=1.0, g=1.0)
        product_params = FamilyParams(alpha=1.0, g=-1.0)
        for _ in range(1000):
            ybar = rng.uniform(0.5, 100.0)
            xbar = rng.uniform(0.5, 50.0)
            pop_mean_x = rng.uniform(0.5, 50.0)
            assert ratio_estimate(ybar, xbar, pop_mean_x) == family_estimate(
                ybar, xbar, pop_mean_x, ratio_params
            )
            assert product_estimate(ybar, xbar, pop_mean_x) == family_estimate(
                ybar, xbar, pop_mean_x, product_params
            )


class TestFamilyProperties:
    @settings(max_examples=80, deadline=None)
    @given(
        ybar=st.floats(0.1, 100),
        xbar=st.floats(0.1, 50),
        pop_mean_x=st.floats(0.1, 50),
        alpha=st.floats(-1.5, 1.5),
        g=st.floats(-2, 2),
        c=st.floats(0.25, 8),
    )
    def test_scale_equivariance_in_ybar(self, ybar, xbar, pop_mean_x, alpha, g, c):
        p = FamilyParams(alpha=alpha, g=g)
        try:
            base = family_estimate(ybar, xbar, pop_mean_x, p)
        except (SingularityError, DomainError):
            return
        scaled = family_estimate(c * ybar, xbar, pop_mean_x, p)
        assert scaled == pytest.approx(c * base, rel=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(
        ybar=st.floats(0.1, 100),
        xbar=st.floats(0.1, 50),
        pop_mean_x=st.floats(0.1, 50),
        alpha=st.floats(-1.5, 1.5),
        g=st.floats(-2, 2),
        c=st.floats(0.25, 8),
    )
    def test_x_scale_invariance_for_unit_parameterization(
        self, ybar, xbar, pop_mean_x, alpha, g, c
    ):
        # with a=1, b=0 the bracket depends on x only through xbar/Xbar
        p = FamilyParams(alpha=alpha, g=g)
        try:
            base = family_estimate(ybar, xbar, pop_mean_x, p)
        except (SingularityError, DomainError):
            return
        scaled = family_estimate(ybar, c * xbar, c * pop_mean_x, p)
        assert scaled == pytest.approx(base, rel=1e-10)

    def test_continuity_in_alpha(self):
        base = family_estimate(10.0, 5.0, 4.0, FamilyParams(alpha=0.6, g=1.3))
        for h, bound in ((1e-4, 1e-2), (1e-6, 1e-4), (1e-8, 1e-6)):
            shifted = family_estimate(10.0, 5.0, 4.0, FamilyParams(alpha=0.6 + h, g=1.3))
            assert abs(shifted - base) < bound
