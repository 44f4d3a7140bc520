#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "zeno/dephasing.hpp"
#include "zeno/errors.hpp"

using namespace zeno;

namespace {

DephasingModel closed(const BathSpec& b) { return {b, ClosedFormRoute{}}; }
DephasingModel quad(const BathSpec& b) { return {b, QuadratureRoute{}}; }

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return out;
}

// Baths whose gamma is nondecreasing in t.
std::vector<BathSpec> monotone_baths() {
    return {ohmic_bath(1.0),          power_law_bath(0.7, 0.5, 2.0), power_law_bath(1.2, 2.0, 0.5),
            power_law_bath(1.0, 1.5), lorentzian_bath(4.0, 1.0),     lorentzian_bath(1.0, 0.0),
            markov_bath(0.3),         power_law_dephasing(2.0, 1.5), high_temperature_ohmic_bath(1.0, 1.0)};
}

}  // namespace

TEST(ClosedForm, FrozenValues) {
    EXPECT_NEAR(gamma_closed(ohmic_bath(1.0), 1.0), 0.5 * std::log(2.0), 1e-15);
    EXPECT_NEAR(gamma_closed(power_law_bath(1.0, 2.0), 1.0), 0.25, 1e-15);
    EXPECT_NEAR(gamma_closed(power_law_bath(1.0, 3.0), 1.0), 0.5, 1e-15);
    EXPECT_NEAR(gamma_closed(power_law_bath(1.0, 0.5), 1.0), 0.17491303693921667, 1e-14);
    EXPECT_NEAR(gamma_closed(lorentzian_bath(4.0, 1.0), 1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(gamma_closed(high_temperature_ohmic_bath(1.0, 1.0), 1.0), 0.43882457311747565, 1e-15);
    EXPECT_DOUBLE_EQ(gamma_closed(markov_bath(0.3), 2.0), 0.6);
    EXPECT_DOUBLE_EQ(gamma_closed(power_law_dephasing(2.0, 2.0), 3.0), 18.0);
}

TEST(ClosedForm, Rates) {
    EXPECT_NEAR(dgamma_dt_closed(ohmic_bath(1.0), 1.0), 0.5, 1e-15);
    EXPECT_NEAR(dgamma_dt_closed(high_temperature_ohmic_bath(1.0, 2.0), 1.0), std::numbers::pi / 8, 1e-15);
    EXPECT_DOUBLE_EQ(dgamma_dt_closed(markov_bath(0.3), 5.0), 0.3);
}

TEST(ClosedForm, VanishesAtZero) {
    for (const auto& b : monotone_baths()) EXPECT_EQ(gamma_closed(b, 0.0), 0.0);
    EXPECT_EQ(gamma_closed(power_law_bath(1.0, 3.0), 0.0), 0.0);
}

TEST(ClosedForm, Nondecreasing) {
    for (const auto& b : monotone_baths()) {
        double prev = 0.0;
        for (double t : log_grid(1e-3, 1e3, 200)) {
            double g = gamma_closed(b, t);
            EXPECT_GE(g, prev) << "t = " << t;
            prev = g;
        }
    }
}

TEST(ClosedForm, SuperOhmicOvershoot) {
    // s > 2 rises above its t -> infinity limit before settling.
    auto b = power_law_bath(1.0, 3.0);
    EXPECT_NEAR(gamma_closed(b, 10.0), 0.5 * (1 + 99.0 / 10201.0), 1e-14);
    EXPECT_GT(gamma_closed(b, 10.0), 0.5);
    EXPECT_NEAR(gamma_closed(b, 1e6), 0.5, 1e-11);
}

TEST(ClosedForm, LinearInCoupling) {
    for (double s : {0.5, 1.0, 2.0, 3.0}) {
        for (double t : {0.1, 1.0, 7.0}) {
            double g1 = gamma_closed(power_law_bath(1.0, s), t);
            EXPECT_NEAR(gamma_closed(power_law_bath(3.7, s), t), 3.7 * g1, 1e-14 * g1);
        }
    }
    EXPECT_NEAR(gamma_closed(lorentzian_bath(6.0, 0.5), 2.0), 3.0 * gamma_closed(lorentzian_bath(2.0, 0.5), 2.0),
                1e-15);
}

TEST(ClosedForm, DerivativeMatchesFiniteDifference) {
    for (const auto& b : monotone_baths()) {
        for (double t : {0.05, 0.7, 3.0, 20.0}) {
            double h = 1e-5 * t;
            double fd = (gamma_closed(b, t + h) - gamma_closed(b, t - h)) / (2 * h);
            double d = dgamma_dt_closed(b, t);
            EXPECT_NEAR(d, fd, 1e-7 * std::max(1.0, std::abs(d))) << "t = " << t;
        }
    }
    auto b = power_law_bath(1.0, 3.0);
    double fd = (gamma_closed(b, 2.0 + 1e-5) - gamma_closed(b, 2.0 - 1e-5)) / 2e-5;
    EXPECT_NEAR(dgamma_dt_closed(b, 2.0), fd, 1e-8);
}

TEST(ClosedForm, ShortTimeLaw) {
    std::vector<BathSpec> baths{ohmic_bath(1.0, 2.0),    power_law_bath(0.7, 0.5, 2.0), power_law_bath(1.0, 3.0),
                                lorentzian_bath(4.0, 1.0), power_law_dephasing(2.0, 2.0),
                                high_temperature_ohmic_bath(1.0, 1.0)};
    for (const auto& b : baths) {
        double c2 = gamma_short_time_coeff(closed(b));
        double t = 1e-5 / fastest_frequency(b);
        EXPECT_NEAR(gamma_closed(b, t) / (t * t), c2, 1e-4 * c2);
    }
    EXPECT_DOUBLE_EQ(gamma_short_time_coeff(closed(ohmic_bath(1.0, 2.0))), 2.0);
    EXPECT_NEAR(gamma_short_time_coeff(closed(power_law_bath(1.0, 3.0))), 1.5, 1e-15);
    EXPECT_DOUBLE_EQ(gamma_short_time_coeff(closed(lorentzian_bath(4.0, 1.0))), 0.5);
    EXPECT_THROW(gamma_short_time_coeff(closed(markov_bath(1.0))), NoQuadraticRegime);
}

TEST(ClosedForm, LorentzianSmallArgument) {
    // g t near the series switch on both sides.
    auto b = lorentzian_bath(1.0, 1.0);
    const double t[] = {1e-3, 0.0999, 0.1, 0.1001};
    const double expected[] = {1.2495834374791701e-7, 0.0012069765755252673, 0.0012093545089898933,
                               0.0012117347045480662};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(gamma_closed(b, t[i]), expected[i], 2e-15 * expected[i]);
}

TEST(SpectralDensity, Values) {
    EXPECT_NEAR(spectral_density(PowerLawExpCutoff{2.0, 1.0, 1.0}, 1.0), 2 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(spectral_density(PowerLawExpCutoff{1.0, 3.0, 2.0}, 1.0), 0.25 * std::exp(-0.5), 1e-15);
    EXPECT_NEAR(spectral_density(Lorentzian{2.0, 1.0}, 1.0), 1 / std::numbers::pi, 1e-15);
    EXPECT_THROW(spectral_density(GenericPowerLawDephasing{1.0, 1.0}, 1.0), NoSpectralDensity);
    EXPECT_THROW(spectral_density(Lorentzian{2.0, 1.0}, -1.0), DomainError);
}

TEST(Quadrature, MatchesClosedForm) {
    for (double s : {0.5, 2.0, 3.0}) {
        auto b = power_law_bath(1.3, s, 0.8);
        for (double t : {0.01, 0.5, 4.0, 60.0}) {
            double g = gamma_closed(b, t);
            EXPECT_NEAR(gamma_quadrature(b, t).value, g, 1e-8 * g) << "s = " << s << " t = " << t;
            double d = dgamma_dt_closed(b, t);
            EXPECT_NEAR(dgamma_dt_quadrature(b, t).value, d, 1e-8 * std::abs(d) + 1e-13);
        }
    }
    auto lor = lorentzian_bath(4.0, 1.0);
    EXPECT_NEAR(gamma_quadrature(lor, 1.0).value, std::exp(-1.0), 1e-9);
}

TEST(Quadrature, OhmicConvention) {
    auto b = ohmic_bath(1.0);
    EXPECT_NEAR(gamma_quadrature(b, 1.0).value, 0.25 * std::log(2.0), 1e-12);
    EXPECT_DOUBLE_EQ(quadrature_convention_constant(b), 0.5);
    EXPECT_DOUBLE_EQ(quadrature_convention_constant(power_law_bath(1.0, 2.0)), 1.0);
    EXPECT_DOUBLE_EQ(quadrature_convention_constant(high_temperature_ohmic_bath(1.0, 1.0)), 1.0);
    EXPECT_DOUBLE_EQ(gamma_short_time_coeff(quad(b)), 0.25);
}

TEST(Quadrature, FiniteTemperature) {
    BathSpec b{PowerLawExpCutoff{1.0, 2.0, 1.0}, FiniteBeta{1.0}};
    EXPECT_NEAR(gamma_quadrature(b, 1.0).value, 0.42186598552400984, 1e-9);
    EXPECT_NEAR(dgamma_dt_quadrature(b, 1.0).value, 0.54423354275931887, 1e-9);
    EXPECT_NEAR(quad(b).gamma(1.0), 0.42186598552400984, 1e-9);
    EXPECT_THROW(gamma_closed(b, 1.0), NoClosedForm);
    // Hot baths dephase faster.
    BathSpec cold{PowerLawExpCutoff{1.0, 2.0, 1.0}, FiniteBeta{20.0}};
    EXPECT_GT(gamma_quadrature(b, 1.0).value, gamma_quadrature(cold, 1.0).value);
    EXPECT_NEAR(gamma_quadrature(cold, 1.0).value, 0.25013150530638706, 1e-9);
}

TEST(Quadrature, HighTemperatureMatchesClosedForm) {
    auto b = high_temperature_ohmic_bath(0.8, 2.0, 1.5);
    for (double t : {0.1, 1.0, 10.0}) {
        double g = gamma_closed(b, t);
        EXPECT_NEAR(gamma_quadrature(b, t).value, g, 1e-8 * g);
    }
}

TEST(Quadrature, Rejections) {
    EXPECT_THROW(gamma_quadrature(markov_bath(1.0), 1.0), NoSpectralDensity);
    EXPECT_THROW(gamma_quadrature(BathSpec{Lorentzian{1.0, 1.0}, FiniteBeta{1.0}}, 1.0), DomainError);
    EXPECT_THROW(gamma_quadrature(lorentzian_bath(1.0, 0.0), 1.0), DomainError);
    EXPECT_THROW(quadrature_convention_constant(markov_bath(1.0)), NoClosedForm);
}

TEST(Bath, Validation) {
    EXPECT_THROW(power_law_bath(-1.0, 1.0).validate(), DomainError);
    EXPECT_THROW(power_law_bath(1.0, 0.0).validate(), DomainError);
    EXPECT_THROW(lorentzian_bath(0.0, 1.0).validate(), DomainError);
    EXPECT_THROW(power_law_dephasing(1.0, -2.0).validate(), DomainError);
    EXPECT_THROW((BathSpec{PowerLawExpCutoff{1.0, 2.0, 1.0}, HighTemperatureOhmic{1.0}}).validate(), DomainError);
    EXPECT_THROW((BathSpec{PowerLawExpCutoff{}, FiniteBeta{0.0}}).validate(), DomainError);
    EXPECT_THROW(gamma_closed(ohmic_bath(1.0), -1.0), DomainError);
    EXPECT_THROW(closed(ohmic_bath(1.0)).gamma(std::nan("")), DomainError);
}

TEST(Bath, Classification) {
    EXPECT_TRUE(is_ohmic(PowerLawExpCutoff{1.0, 1.0 + 1e-10, 1.0}));
    EXPECT_FALSE(is_ohmic(PowerLawExpCutoff{1.0, 1.0 + 1e-6, 1.0}));
    EXPECT_TRUE(has_closed_form(lorentzian_bath(1.0, 1.0)));
    EXPECT_FALSE(has_closed_form(BathSpec{PowerLawExpCutoff{}, FiniteBeta{1.0}}));
    EXPECT_FALSE(has_spectral_density(markov_bath(1.0)));
    EXPECT_DOUBLE_EQ(fastest_frequency(power_law_bath(1.0, 2.0, 3.0)), 3.0);
    EXPECT_DOUBLE_EQ(fastest_frequency(lorentzian_bath(4.0, 0.5)), 0.5);
    EXPECT_DOUBLE_EQ(fastest_frequency(lorentzian_bath(4.0, 0.0)), 2.0);
    EXPECT_DOUBLE_EQ(fastest_frequency(power_law_dephasing(9.0, 2.0)), 3.0);
}

TEST(Bath, NearOhmicContinuity) {
    for (double t : {0.1, 1.0, 10.0}) {
        double g1 = gamma_closed(ohmic_bath(1.0), t);
        double g = gamma_closed(power_law_bath(1.0, 1.0 + 1e-7), t);
        EXPECT_NEAR(g, 0.5 * g1, 1e-6 * g1);
    }
}
