import math

import pytest

from archliq import (
    CompensatedPoissonSquared,
    FgnSquared,
    ModelParams,
    NoiseMoments,
    RegimeError,
    WhiteSquared,
    theoretical_covariance,
    theoretical_mean_x_squared,
    theoretical_sigma2_liquidity_cross_moment,
    theoretical_sigma4,
    theoretical_x_fourth,
    theoretical_x_squared_acov,
    validate_regime,
)

COVS = {
    "fgn13": theoretical_covariance(FgnSquared(1 / 3)),
    "fgn45": theoretical_covariance(FgnSquared(4 / 5)),
    "poisson": theoretical_covariance(CompensatedPoissonSquared(1.0)),
    "white": theoretical_covariance(WhiteSquared()),
}


class TestParams:
    def test_valid(self):
        p = ModelParams(0.0, 0.3, 0.1)
        assert p.alpha0 == 0.0

    @pytest.mark.parametrize(
        "alpha0,alpha1,l1", [(-0.1, 0.1, 0.5), (1.0, 0.0, 0.5), (1.0, 0.1, 0.0)]
    )
    def test_invalid(self, alpha0, alpha1, l1):
        with pytest.raises(ValueError):
            ModelParams(alpha0, alpha1, l1)


class TestNoiseMoments:
    def test_gaussian_preset(self, gaussian_moments):
        assert gaussian_moments == NoiseMoments(3.0, 15.0, 105.0, 2.0)

    def test_moment_chain_enforced(self):
        with pytest.raises(ValueError):
            NoiseMoments(e4=3.0, e6=2.0, e8=105.0, var_eps_sq=2.0)
        with pytest.raises(ValueError):
            NoiseMoments(e4=0.5, e6=1.0, e8=1.0, var_eps_sq=0.0)

    def test_gaussian_consistency_bound(self, gaussian_moments):
        # 105^(-1/4) ~ 0.3124, the alpha1 ceiling for consistent estimation
        assert gaussian_moments.consistency_bound == pytest.approx(
            105.0**-0.25, abs=1e-15
        )
        assert gaussian_moments.consistency_bound == pytest.approx(0.3124, abs=5e-4)

    def test_fourth_moment_bound(self, gaussian_moments):
        assert gaussian_moments.fourth_moment_bound == pytest.approx(1 / math.sqrt(3))


class TestRegimes:
    def test_small_alpha1_passes_everything(self, gaussian_moments):
        report = validate_regime(ModelParams(1, 0.1, 0.5), gaussian_moments, "consistency")
        assert report.stationary and report.fourth_moment and report.consistency

    def test_alpha1_half(self, gaussian_moments):
        # 0.5 < 1/sqrt(3) ~ 0.577 so the fourth moment exists, but
        # 0.5 > 0.3124 so consistency fails
        params = ModelParams(1, 0.5, 0.5)
        report = validate_regime(params, gaussian_moments, "fourth_moment")
        assert report.stationary and report.fourth_moment and not report.consistency
        with pytest.raises(RegimeError, match="consistency"):
            validate_regime(params, gaussian_moments, "consistency")

    def test_alpha1_099_only_stationary(self, gaussian_moments):
        params = ModelParams(1, 0.99, 0.5)
        report = validate_regime(params, gaussian_moments, "stationary")
        assert report.stationary
        assert not report.fourth_moment
        assert not report.consistency
        with pytest.raises(RegimeError, match="fourth_moment"):
            validate_regime(params, gaussian_moments, "fourth_moment")

    def test_unknown_purpose(self, gaussian_moments):
        with pytest.raises(ValueError):
            validate_regime(ModelParams(1, 0.1, 0.5), gaussian_moments, "eighth")


class TestMeanOfXSquared:
    def test_default_parameters(self, default_params):
        assert theoretical_mean_x_squared(default_params) == pytest.approx(1.5 / 0.9)

    def test_zero_intercept(self):
        assert theoretical_mean_x_squared(ModelParams(0.0, 0.5, 1.0)) == pytest.approx(2.0)

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            theoretical_mean_x_squared(ModelParams(1.0, 1.0, 0.5))


class TestFourthMoments:
    def test_regime_error_outside_fourth_moment(self, gaussian_moments):
        with pytest.raises(RegimeError):
            theoretical_sigma4(ModelParams(1, 0.6, 0.5), COVS["white"], gaussian_moments)

    @pytest.mark.parametrize("name", sorted(COVS))
    def test_variance_decomposition_consistency(self, name, gaussian_moments, default_params):
        # gamma(0) + mu^2 must equal E(X^4) = e4 * E(sigma^4): two independent
        # series constructions agreeing on an exact identity
        cov = COVS[name]
        mu = theoretical_mean_x_squared(default_params)
        gamma0 = theoretical_x_squared_acov(default_params, cov, gaussian_moments, 0)[0]
        x4 = theoretical_x_fourth(default_params, cov, gaussian_moments)
        assert gamma0 + mu * mu == pytest.approx(x4, rel=1e-10)

    def test_white_closed_form(self, gaussian_moments):
        # for uncorrelated liquidity the double series collapses to
        # [m^2 (1+a)/(1-a) + l1^2 s0] / (1 - a^2 e4)
        params = ModelParams(1.0, 0.2, 0.5)
        m, a, l1 = 1.5, 0.2, 0.5
        expected = (m * m * (1 + a) / (1 - a) + l1 * l1 * 2.0) / (1 - a * a * 3.0)
        got = theoretical_sigma4(params, COVS["white"], gaussian_moments)
        assert got == pytest.approx(expected, rel=1e-12)


class TestAcovOracle:
    @pytest.mark.parametrize("name", sorted(COVS))
    @pytest.mark.parametrize("alpha1", [0.05, 0.1, 0.3])
    def test_satisfies_moment_equations(self, name, alpha1, gaussian_moments):
        # the constructed gamma must solve, for n >= 1,
        #   alpha1^2 g(n) - alpha1 (g(n+1) + g(n-1)) + g(n) = l1^2 s(n)
        # and at n = 0 (with mu2 = E X^4, ratio = Var(eps^2)/E(eps^4))
        #   alpha1^2 g(0) - 2 alpha1 g(1) + g(0) - mu2 ratio = l1^2 s(0)
        params = ModelParams(1.0, alpha1, 0.5)
        cov = COVS[name]
        g = theoretical_x_squared_acov(params, cov, gaussian_moments, 7)
        scale = abs(g[0])
        for n in range(1, 6):
            residual = (
                alpha1**2 * g[n] - alpha1 * (g[n + 1] + g[n - 1]) + g[n]
                - params.l1**2 * cov.s(n)
            )
            assert abs(residual) < 1e-10 * scale
        mu2 = theoretical_x_fourth(params, cov, gaussian_moments)
        ratio = gaussian_moments.var_eps_sq / gaussian_moments.e4
        residual0 = (
            alpha1**2 * g[0] - 2 * alpha1 * g[1] + g[0] - mu2 * ratio
            - params.l1**2 * cov.s0
        )
        assert abs(residual0) < 1e-10 * scale

    def test_white_matches_geometric_form(self, gaussian_moments):
        # uncorrelated liquidity: gamma(n) = alpha1^n gamma(0)
        params = ModelParams(1.0, 0.25, 0.5)
        g = theoretical_x_squared_acov(params, COVS["white"], gaussian_moments, 5)
        for n in range(1, 6):
            assert g[n] == pytest.approx(0.25**n * g[0], rel=1e-10)


class TestCrossMoment:
    def test_white_nonpositive_offset(self, default_params):
        # every f argument is negative, so the series is the plain geometric
        # sum: alpha0/(1-alpha1) + l1/(1-alpha1)
        expected = 1.5 / 0.9
        for offset in (0, -1, -5):
            got = theoretical_sigma2_liquidity_cross_moment(
                default_params, COVS["white"], offset
            )
            assert got == pytest.approx(expected, rel=1e-11)

    def test_white_offset_one_picks_up_f0(self, default_params):
        # offset 1 hits f(0) = 1 + s0 in the i = 0 term
        base = 1.0 / 0.9 + 0.5 / 0.9
        got = theoretical_sigma2_liquidity_cross_moment(default_params, COVS["white"], 1)
        assert got == pytest.approx(base + 0.5 * COVS["white"].s0, rel=1e-11)

    def test_small_l1_limit(self):
        params = ModelParams(1.0, 0.1, 1e-9)
        got = theoretical_sigma2_liquidity_cross_moment(params, COVS["fgn13"], 1)
        assert got == pytest.approx(1.0 / 0.9, abs=1e-8)

    def test_explicit_truncation_matches_auto(self, default_params):
        auto = theoretical_sigma2_liquidity_cross_moment(default_params, COVS["fgn45"], 2)
        manual = theoretical_sigma2_liquidity_cross_moment(
            default_params, COVS["fgn45"], 2, truncation=400
        )
        assert auto == pytest.approx(manual, rel=1e-12)

    def test_regime_error(self):
        with pytest.raises(RegimeError):
            theoretical_sigma2_liquidity_cross_moment(
                ModelParams(1.0, 1.5, 0.5), COVS["white"], 1
            )
