#include "zeno/dephasing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0, got " + sci(t));
}

// (exp(-x) - 1 + x) / x^2
double lorentz_shape(double x) {
    if (x < 0.1) {
        // sum over k of (-x)^k / (k + 2)!
        double term = 0.5, sum = 0.0;
        for (int k = 0; k < 10; ++k) {
            sum += term;
            term *= -x / (k + 3);
        }
        return sum;
    }
    return (std::expm1(-x) + x) / (x * x);
}

// (1 - exp(-x)) / x
double lorentz_rate_shape(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

// Zero-temperature power law, s != 1:
// (alpha/2) Gamma(s-1) [1 - Re (1 + i w_c t)^(1-s)]
double power_law_gamma(const PowerLawExpCutoff& m, double t) {
    const double x = m.omega_c * t;
    const double q = m.s - 1.0;
    const double theta = std::atan(x);
    const double u = -0.5 * q * std::log1p(x * x);
    const double half = std::sin(0.5 * q * theta);
    const double bracket = -std::expm1(u) + std::exp(u) * 2.0 * half * half;
    // Gamma(s-1) = Gamma(s)/(s-1) keeps s close to 1 well conditioned.
    return 0.5 * m.alpha * std::tgamma(m.s) * (bracket / q);
}

double power_law_rate(const PowerLawExpCutoff& m, double t) {
    const double x = m.omega_c * t;
    return 0.5 * m.alpha * std::tgamma(m.s) * m.omega_c * std::pow(1.0 + x * x, -0.5 * m.s) *
           std::sin(m.s * std::atan(x));
}

// x atan(x) - ln(1 + x^2) / 2
double high_t_shape(double x) {
    if (x < 1e-4) {
        const double x2 = x * x;
        return x2 / 2.0 - x2 * x2 / 12.0 + x2 * x2 * x2 / 30.0;
    }
    return x * std::atan(x) - 0.5 * std::log1p(x * x);
}

// Truncated power series sum_k c[k] w^k, k = 0..4.
using Series = std::array<double, 5>;

Series multiply(const Series& a, const Series& b) {
    Series out{};
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

enum class Kernel { Dephasing, Rate, Static };

// Low-frequency expansion of h(w) = J(w) w_T(w) / 2 as w^power * series.
struct LowFrequency {
    double power{0.0};
    Series coeffs{};
};

struct Integrand {
    BathSpec bath;

    double spectral(double w) const { return spectral_density(bath.spectral, w); }

    double weight(double w) const {
        return std::visit(overloaded{[](const ZeroTemperature&) { return 1.0; },
                                     [w](const FiniteBeta& b) { return 1.0 / std::tanh(0.5 * b.beta * w); },
                                     [w](const HighTemperatureOhmic& b) { return 2.0 / (b.beta * w); }},
                          bath.temperature);
    }

    double h(double w) const {
        if (w <= 0.0) return 0.0;
        const double j = spectral(w);
        if (j == 0.0) return 0.0;
        return 0.5 * j * weight(w);
    }

    LowFrequency low_frequency() const {
        LowFrequency spec_part = std::visit(
            overloaded{[](const PowerLawExpCutoff& m) {
                           LowFrequency lf{m.s, {}};
                           const double base = m.alpha * std::pow(m.omega_c, 1.0 - m.s);
                           double term = base;
                           for (std::size_t k = 0; k < lf.coeffs.size(); ++k) {
                               lf.coeffs[k] = term;
                               term *= -1.0 / (m.omega_c * static_cast<double>(k + 1));
                           }
                           return lf;
                       },
                       [](const Lorentzian& m) {
                           const double base = m.a / (kPi * m.g);
                           const double g2 = m.g * m.g;
                           return LowFrequency{0.0, {base, 0.0, -base / g2, 0.0, base / (g2 * g2)}};
                       },
                       [](const GenericPowerLawDephasing&) -> LowFrequency {
                           throw NoSpectralDensity("gamma = alpha t^nu has no J(w)");
                       }},
            bath.spectral);

        const LowFrequency weight_part = std::visit(
            overloaded{[](const ZeroTemperature&) { return LowFrequency{0.0, {1.0, 0.0, 0.0, 0.0, 0.0}}; },
                       [](const FiniteBeta& b) {
                           // coth(y/2) = (2/y)(1 + y^2/12 - y^4/720 + ...)
                           const double b2 = b.beta * b.beta;
                           const double c = 2.0 / b.beta;
                           return LowFrequency{-1.0, {c, 0.0, c * b2 / 12.0, 0.0, -c * b2 * b2 / 720.0}};
                       },
                       [](const HighTemperatureOhmic& b) {
                           return LowFrequency{-1.0, {2.0 / b.beta, 0.0, 0.0, 0.0, 0.0}};
                       }},
            bath.temperature);

        LowFrequency out{spec_part.power + weight_part.power, multiply(spec_part.coeffs, weight_part.coeffs)};
        for (double& c : out.coeffs) c *= 0.5;
        return out;
    }
};

Series kernel_series(Kernel kernel, double t) {
    const double t2 = t * t;
    switch (kernel) {
    case Kernel::Dephasing: return {t2 / 2.0, 0.0, -t2 * t2 / 24.0, 0.0, t2 * t2 * t2 / 720.0};
    case Kernel::Rate: return {t, 0.0, -t * t2 / 6.0, 0.0, t * t2 * t2 / 120.0};
    case Kernel::Static: return {0.5, 0.0, 0.0, 0.0, 0.0};
    }
    return {};
}

double kernel_value(Kernel kernel, double w, double t) {
    switch (kernel) {
    case Kernel::Dephasing: {
        const double half = std::sin(0.5 * w * t);
        return 2.0 * half * half / (w * w);
    }
    case Kernel::Rate: return std::sin(w * t) / w;
    case Kernel::Static: return 0.5;
    }
    return 0.0;
}

double base_cutoff(const BathSpec& bath) {
    return std::visit(overloaded{[](const PowerLawExpCutoff& m) { return m.omega_c * std::max(40.0, 40.0 / m.s); },
                                 [](const Lorentzian& m) { return 40.0 * m.g; },
                                 [](const GenericPowerLawDephasing&) { return 0.0; }},
                      bath.spectral);
}

void require_quadrature_support(const BathSpec& bath) {
    bath.validate();
    if (!has_spectral_density(bath)) throw NoSpectralDensity("gamma = alpha t^nu has no J(w) to integrate");
    if (const auto* lor = std::get_if<Lorentzian>(&bath.spectral)) {
        if (!std::holds_alternative<ZeroTemperature>(bath.temperature))
            throw DomainError("Lorentzian J(0) > 0 makes the thermal integral infrared divergent");
        if (!(lor->g > 0.0)) throw DomainError("Lorentzian quadrature needs g > 0");
    }
}

// Integral of h(w) K(w; t) over (0, inf): series on [0, eps], adaptive panels
// on [eps, W], and for the non-oscillatory parts an exactly mapped tail.
QuadratureResult integrate_kernel(const BathSpec& bath, Kernel kernel, double t, const QuadratureSettings& settings) {
    settings.validate();
    require_quadrature_support(bath);
    const Integrand integrand{bath};
    const double scale = fastest_frequency(bath);
    const bool oscillatory = kernel != Kernel::Static;

    double eps = settings.small_omega_cutoff * scale;
    if (oscillatory && t > 0.0) eps = std::min(eps, settings.small_omega_cutoff / t);
    std::visit(overloaded{[](const ZeroTemperature&) {},
                          [&](const FiniteBeta& b) { eps = std::min(eps, settings.small_omega_cutoff / b.beta); },
                          [&](const HighTemperatureOhmic&) {}},
               bath.temperature);

    const LowFrequency lf = integrand.low_frequency();
    const Series local = multiply(lf.coeffs, kernel_series(kernel, t));
    double series_value = 0.0;
    double last_term = 0.0;
    for (std::size_t k = 0; k < local.size(); ++k) {
        const double p = lf.power + static_cast<double>(k) + 1.0;
        const double term = local[k] * std::pow(eps, p) / p;
        series_value += term;
        if (term != 0.0) last_term = std::abs(term);
    }
    // Truncation is one order beyond the last kept term.
    const double series_error = last_term * eps * std::max({scale > 0 ? 1.0 / scale : 0.0, t, 1.0});

    QuadratureSettings inner = settings;
    inner.rel_tol *= 0.5;
    inner.abs_tol *= 0.5;

    auto body = [&](double w) { return integrand.h(w) * kernel_value(kernel, w, t); };
    const double width = oscillatory && t > 0.0 ? kPi / (4.0 * t) : std::numeric_limits<double>::infinity();

    double cutoff = std::max(base_cutoff(bath), 4.0 * eps);
    for (int attempt = 0;; ++attempt) {
        const QuadratureResult main = integrate_interval(body, eps, cutoff, inner, width);
        double total = series_value + main.value;
        double error = main.error + series_error;
        double abs_integral = main.abs_integral + std::abs(series_value);

        // Non-oscillatory tails: w = W / u maps [W, inf) onto (0, 1].
        double tail_bound = 0.0;
        if (kernel == Kernel::Dephasing || kernel == Kernel::Static) {
            const double factor = kernel == Kernel::Static ? 0.5 : 1.0;
            auto mapped = [&](double u) {
                if (u <= 0.0) return 0.0;
                const double w = cutoff / u;
                return kernel == Kernel::Static ? integrand.h(w) * cutoff / (u * u) : integrand.h(w) / cutoff;
            };
            const QuadratureResult tail = integrate_interval(mapped, 0.0, 1.0, inner);
            total += factor * tail.value;
            error += factor * tail.error;
            abs_integral += factor * tail.abs_integral;
        }
        // Oscillatory remainder: |int_W^inf f cos| <= 2 f(W) / t for decreasing f.
        if (kernel == Kernel::Dephasing && t > 0.0)
            tail_bound = 2.0 * integrand.h(cutoff) / (cutoff * cutoff * t);
        if (kernel == Kernel::Rate && t > 0.0) tail_bound = 2.0 * integrand.h(cutoff) / (cutoff * t);

        const double target =
            std::max({settings.abs_tol, settings.rel_tol * std::abs(total), roundoff_floor(abs_integral)});
        if (tail_bound > 0.25 * target && attempt < 40) {
            cutoff *= 2.0;
            continue;
        }
        error += tail_bound;
        if (error > target)
            throw ToleranceNotMet("quadrature error " + sci(error) + " exceeds " + sci(target));
        return {total, error, abs_integral, main.panels};
    }
}

} // namespace

void BathSpec::validate() const {
    std::visit(overloaded{[](const PowerLawExpCutoff& m) {
                              if (!(m.alpha > 0.0) || !(m.s > 0.0) || !(m.omega_c > 0.0))
                                  throw DomainError("power-law bath needs alpha > 0, s > 0, omega_c > 0");
                          },
                          [](const Lorentzian& m) {
                              if (!(m.a > 0.0) || !(m.g >= 0.0))
                                  throw DomainError("Lorentzian bath needs a > 0 and g >= 0");
                          },
                          [](const GenericPowerLawDephasing& m) {
                              if (!(m.alpha > 0.0) || !(m.nu > 0.0))
                                  throw DomainError("power-law dephasing needs alpha > 0 and nu > 0");
                          }},
               spectral);
    std::visit(overloaded{[](const ZeroTemperature&) {},
                          [](const FiniteBeta& b) {
                              if (!(b.beta > 0.0)) throw DomainError("finite temperature needs beta > 0");
                          },
                          [this](const HighTemperatureOhmic& b) {
                              if (!(b.beta > 0.0)) throw DomainError("high temperature bath needs beta > 0");
                              const auto* m = std::get_if<PowerLawExpCutoff>(&spectral);
                              if (!m || !is_ohmic(*m))
                                  throw DomainError("high temperature approximation is only defined for s = 1");
                          }},
               temperature);
}

BathSpec ohmic_bath(double alpha, double omega_c) { return {PowerLawExpCutoff{alpha, 1.0, omega_c}, ZeroTemperature{}}; }
BathSpec power_law_bath(double alpha, double s, double omega_c) {
    return {PowerLawExpCutoff{alpha, s, omega_c}, ZeroTemperature{}};
}
BathSpec lorentzian_bath(double a, double g) { return {Lorentzian{a, g}, ZeroTemperature{}}; }
BathSpec markov_bath(double gamma0) { return {GenericPowerLawDephasing{gamma0, 1.0}, ZeroTemperature{}}; }
BathSpec power_law_dephasing(double alpha, double nu) {
    return {GenericPowerLawDephasing{alpha, nu}, ZeroTemperature{}};
}
BathSpec high_temperature_ohmic_bath(double alpha, double beta, double omega_c) {
    return {PowerLawExpCutoff{alpha, 1.0, omega_c}, HighTemperatureOhmic{beta}};
}

bool is_ohmic(const PowerLawExpCutoff& model) { return std::abs(model.s - 1.0) < kOhmicTolerance; }

bool has_spectral_density(const BathSpec& bath) {
    return !std::holds_alternative<GenericPowerLawDephasing>(bath.spectral);
}

bool has_closed_form(const BathSpec& bath) {
    return std::visit(overloaded{[&](const PowerLawExpCutoff& m) {
                                     if (std::holds_alternative<ZeroTemperature>(bath.temperature)) return true;
                                     return std::holds_alternative<HighTemperatureOhmic>(bath.temperature) && is_ohmic(m);
                                 },
                                 [&](const Lorentzian&) {
                                     return std::holds_alternative<ZeroTemperature>(bath.temperature);
                                 },
                                 [](const GenericPowerLawDephasing&) { return true; }},
                      bath.spectral);
}

double spectral_density(const SpectralModel& model, double omega) {
    if (!(omega >= 0.0)) throw DomainError("spectral density needs omega >= 0");
    return std::visit(overloaded{[omega](const PowerLawExpCutoff& m) {
                                     if (omega == 0.0) return 0.0;
                                     return m.alpha * std::pow(m.omega_c, 1.0 - m.s) * std::pow(omega, m.s) *
                                            std::exp(-omega / m.omega_c);
                                 },
                                 [omega](const Lorentzian& m) {
                                     return m.a * m.g / (kPi * (m.g * m.g + omega * omega));
                                 },
                                 [](const GenericPowerLawDephasing&) -> double {
                                     throw NoSpectralDensity("gamma = alpha t^nu has no J(w)");
                                 }},
                      model);
}

double gamma_closed(const BathSpec& bath, double t) {
    bath.validate();
    require_time(t);
    if (!has_closed_form(bath)) throw NoClosedForm("no closed form for this bath/temperature pair; use quadrature");
    return std::visit(
        overloaded{[&](const PowerLawExpCutoff& m) {
                       const double x = m.omega_c * t;
                       if (const auto* ht = std::get_if<HighTemperatureOhmic>(&bath.temperature))
                           return m.alpha / (ht->beta * m.omega_c) * high_t_shape(x);
                       if (is_ohmic(m)) return 0.5 * m.alpha * std::log1p(x * x);
                       return power_law_gamma(m, t);
                   },
                   [t](const Lorentzian& m) { return 0.25 * m.a * t * t * lorentz_shape(m.g * t); },
                   [t](const GenericPowerLawDephasing& m) { return m.alpha * std::pow(t, m.nu); }},
        bath.spectral);
}

double dgamma_dt_closed(const BathSpec& bath, double t) {
    bath.validate();
    require_time(t);
    if (!has_closed_form(bath)) throw NoClosedForm("no closed form for this bath/temperature pair; use quadrature");
    return std::visit(
        overloaded{[&](const PowerLawExpCutoff& m) {
                       const double x = m.omega_c * t;
                       if (const auto* ht = std::get_if<HighTemperatureOhmic>(&bath.temperature))
                           return m.alpha / ht->beta * std::atan(x);
                       if (is_ohmic(m)) return m.alpha * m.omega_c * x / (1.0 + x * x);
                       return power_law_rate(m, t);
                   },
                   [t](const Lorentzian& m) { return 0.25 * m.a * t * lorentz_rate_shape(m.g * t); },
                   [t](const GenericPowerLawDephasing& m) {
                       if (t == 0.0) {
                           if (m.nu < 1.0) throw DomainError("d gamma/dt is singular at t = 0 for nu < 1");
                           return m.nu == 1.0 ? m.alpha : 0.0;
                       }
                       return m.alpha * m.nu * std::pow(t, m.nu - 1.0);
                   }},
        bath.spectral);
}

double dgamma_dt(const DephasingModel& deph, double t) {
    return std::visit(overloaded{[&](const ClosedFormRoute&) { return dgamma_dt_closed(deph.bath, t); },
                                 [&](const QuadratureRoute& q) { return dgamma_dt_quadrature(deph.bath, t, q.settings).value; }},
                      deph.route);
}

double DephasingModel::gamma(double t) const {
    return std::visit(overloaded{[&](const ClosedFormRoute&) { return gamma_closed(bath, t); },
                                 [&](const QuadratureRoute& q) { return gamma_quadrature(bath, t, q.settings).value; }},
                      route);
}

double DephasingModel::rate(double t) const { return dgamma_dt(*this, t); }

QuadratureResult gamma_quadrature(const BathSpec& bath, double t, const QuadratureSettings& settings) {
    require_time(t);
    require_quadrature_support(bath);
    if (t == 0.0) return {};
    return integrate_kernel(bath, Kernel::Dephasing, t, settings);
}

QuadratureResult dgamma_dt_quadrature(const BathSpec& bath, double t, const QuadratureSettings& settings) {
    require_time(t);
    require_quadrature_support(bath);
    if (t == 0.0) return {};
    return integrate_kernel(bath, Kernel::Rate, t, settings);
}

double gamma_short_time_coeff(const DephasingModel& deph) {
    const BathSpec& bath = deph.bath;
    bath.validate();
    if (const auto* gen = std::get_if<GenericPowerLawDephasing>(&bath.spectral)) {
        if (gen->nu != 2.0) throw NoQuadraticRegime("gamma = alpha t^nu is quadratic only for nu = 2");
        return gen->alpha;
    }
    if (std::holds_alternative<QuadratureRoute>(deph.route)) {
        const auto& settings = std::get<QuadratureRoute>(deph.route).settings;
        return integrate_kernel(bath, Kernel::Static, 0.0, settings).value;
    }
    if (!has_closed_form(bath)) throw NoClosedForm("no closed form for this bath/temperature pair; use quadrature");
    return std::visit(overloaded{[&](const PowerLawExpCutoff& m) {
                                     const double wc2 = m.omega_c * m.omega_c;
                                     if (const auto* ht = std::get_if<HighTemperatureOhmic>(&bath.temperature))
                                         return 0.5 * m.alpha * m.omega_c / ht->beta;
                                     if (is_ohmic(m)) return 0.5 * m.alpha * wc2;
                                     return 0.25 * m.alpha * std::tgamma(m.s + 1.0) * wc2;
                                 },
                                 [](const Lorentzian& m) { return m.a / 8.0; },
                                 [](const GenericPowerLawDephasing&) { return 0.0; }},
                      bath.spectral);
}

double quadrature_convention_constant(const BathSpec& bath) {
    bath.validate();
    if (!has_closed_form(bath) || !has_spectral_density(bath))
        throw NoClosedForm("convention constant needs both a closed form and a spectral density");
    const auto* m = std::get_if<PowerLawExpCutoff>(&bath.spectral);
    if (m && is_ohmic(*m) && std::holds_alternative<ZeroTemperature>(bath.temperature)) return 0.5;
    return 1.0;
}

double fastest_frequency(const BathSpec& bath) {
    return std::visit(overloaded{[](const PowerLawExpCutoff& m) { return m.omega_c; },
                                 [](const Lorentzian& m) { return m.g > 0.0 ? m.g : std::sqrt(m.a); },
                                 [](const GenericPowerLawDephasing& m) { return std::pow(m.alpha, 1.0 / m.nu); }},
                      bath.spectral);
}

} // namespace zeno
