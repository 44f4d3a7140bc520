#pragma once

#include <variant>

#include "zeno/numerics.hpp"

namespace zeno {

// J(w) = alpha * omega_c^(1-s) * w^s * exp(-w / omega_c)
struct PowerLawExpCutoff {
    double alpha{1.0};
    double s{1.0};
    double omega_c{1.0};
};

// J(w) = (1/pi) * a * g / (g^2 + w^2)
struct Lorentzian {
    double a{1.0};
    double g{1.0};
};

// gamma(t) = alpha * t^nu directly, with no spectral density behind it.
// nu = 1 is Markovian dephasing, nu = 2 a static (inhomogeneous) bath.
struct GenericPowerLawDephasing {
    double alpha{1.0};
    double nu{1.0};
};

using SpectralModel = std::variant<PowerLawExpCutoff, Lorentzian, GenericPowerLawDephasing>;

struct ZeroTemperature {};
struct FiniteBeta {
    double beta{1.0};
};
// coth(beta w / 2) replaced by 2 / (beta w) over the whole band. Ohmic only.
struct HighTemperatureOhmic {
    double beta{1.0};
};

using Temperature = std::variant<ZeroTemperature, FiniteBeta, HighTemperatureOhmic>;

struct BathSpec {
    SpectralModel spectral;
    Temperature temperature{ZeroTemperature{}};

    void validate() const;
};

struct ClosedFormRoute {};
struct QuadratureRoute {
    QuadratureSettings settings{};
};
using EvaluationRoute = std::variant<ClosedFormRoute, QuadratureRoute>;

// gamma(t) enters the single-particle Ramsey fringe as exp(-gamma(t)).
struct DephasingModel {
    BathSpec bath;
    EvaluationRoute route{ClosedFormRoute{}};

    double gamma(double t) const;
    double rate(double t) const;  // d gamma / dt
};

/// |s - 1| below this is treated as the Ohmic bath and uses the log formula.
inline constexpr double kOhmicTolerance = 1e-9;

// Convenience constructors.
BathSpec ohmic_bath(double alpha, double omega_c = 1.0);
BathSpec power_law_bath(double alpha, double s, double omega_c = 1.0);
BathSpec lorentzian_bath(double a, double g);
BathSpec markov_bath(double gamma0);
BathSpec power_law_dephasing(double alpha, double nu);
BathSpec high_temperature_ohmic_bath(double alpha, double beta, double omega_c = 1.0);

bool is_ohmic(const PowerLawExpCutoff& model);
bool has_closed_form(const BathSpec& bath);
bool has_spectral_density(const BathSpec& bath);

double spectral_density(const SpectralModel& model, double omega);

double gamma_closed(const BathSpec& bath, double t);
inline double gamma_closed(const DephasingModel& deph, double t) { return gamma_closed(deph.bath, t); }

double dgamma_dt_closed(const BathSpec& bath, double t);
double dgamma_dt(const DephasingModel& deph, double t);

// One half of the integral of J(w) w_T(w) (1 - cos wt) / w^2 over (0, inf), with
// w_T = 1 at zero temperature, coth(beta w / 2) at finite beta and 2/(beta w) in
// the high-temperature approximation.
QuadratureResult gamma_quadrature(const BathSpec& bath, double t, const QuadratureSettings& settings = {});

// Time derivative of gamma_quadrature, taken under the integral sign.
QuadratureResult dgamma_dt_quadrature(const BathSpec& bath, double t, const QuadratureSettings& settings = {});

// c2 with gamma(t) ~ c2 t^2 as t -> 0, for the model's own route.
double gamma_short_time_coeff(const DephasingModel& deph);

// Ratio gamma_quadrature / gamma_closed, which is t independent. The closed
// Ohmic log formula is twice the s -> 1 limit of the integral, so it is 1/2
// there and 1 for every other model with both routes.
double quadrature_convention_constant(const BathSpec& bath);

// The bath's fastest dynamical frequency: omega_c (power law, high T), g
// (Lorentzian, or sqrt(a) when g = 0), alpha^(1/nu) for gamma = alpha t^nu.
double fastest_frequency(const BathSpec& bath);

} // namespace zeno
