#pragma once

#include <cstdint>
#include <optional>

#include "zeno/dephasing.hpp"
#include "zeno/numerics.hpp"

namespace zeno {

enum class Strategy { Uncorrelated, MaximallyEntangled };

struct ProbeSpec {
    std::int64_t n{1};
    double total_time{1.0};
    Strategy strategy{Strategy::Uncorrelated};

    void validate() const;
    // Factor by which the entangled probe accumulates phase and dephasing.
    double multiplier() const;
};

struct Optimum {
    double t_opt{0.0};
    int k{1};                  // operating point: signal phase = k pi / 2
    double delta_omega_sq{0.0};
    bool finite{true};
    bool boundary_limited{false};
    double phase{0.0};         // accumulated signal phase m * phi * t at the optimum
};

struct RatioResult {
    double r{1.0};
    double t_u{0.0};
    double t_e{0.0};
    double exponential_factor{1.0};  // exp(2 gamma(t_u) - 2 n gamma(t_e))
};

struct PowerLawScaling {
    double r{1.0};
    double t_ratio{1.0};  // t_u / t_e
};

struct HighTempTimes {
    double estimate{0.0};    // sqrt(beta / (4 alpha n omega_c))
    double solved{0.0};      // root of 2 n t dgamma/dt = 1 on the high-T gamma
    double prefactor{0.0};   // solved * sqrt(alpha n omega_c / beta)
    bool zeno_valid{false};  // omega_c * solved < 0.1
};

/// Single-particle Ramsey fringe (1 + cos(phi t) e^-gamma) / 2.
double ramsey_probability(double phi, double t, double gamma_t);

/// Fisher information of the fringe with respect to phi.
double fisher_information(double phi, double t, double gamma_t);

/// delta omega^2 = 1 / (N F) for either strategy. The entangled signal is
/// (1 + cos(n phi t) e^{-n gamma}) / 2 with N = T / t repetitions.
double frequency_variance(double phi, double t, const ProbeSpec& probe, const DephasingModel& deph);

/// Root of 2 m t dgamma/dt = 1 that minimizes exp(2 m gamma(t)) / t.
/// Throws NoFiniteOptimum when the constraint has no root.
double optimal_interrogation(const DephasingModel& deph, double m, const RootSettings& settings = {});

/// Best operating point for the probe. When no interior optimum exists, or
/// it lies beyond total_time, or t = total_time is better, the result is
/// clamped to total_time and flagged boundary_limited.
Optimum optimal_resolution(const DephasingModel& deph, const ProbeSpec& probe);

/// r = |delta omega|_u / |delta omega|_e at each strategy's own optimum.
RatioResult ratio_r(const DephasingModel& deph, std::int64_t n);

/// sqrt(n) f(alpha, n) for the zero-temperature Ohmic bath.
double ohmic_exact_ratio(double alpha, std::int64_t n);

PowerLawScaling power_law_scaling(double nu, std::int64_t n);

// Lorentzian bath
double lorentzian_newton_time(double a, double g, std::int64_t n);
// One genuine Newton step on a n t (1 - e^{-g t}) - 2 g from sqrt(2/(a n)).
double lorentzian_newton_step(double a, double g, std::int64_t n);
// Exact constraint residual a n t (1 - e^{-g t}) - 2 g.
double lorentzian_constraint(double a, double g, std::int64_t n, double t);
// Short-time approximation for the optimal delta omega^2. Not reliable as
// ground truth.
double lorentzian_short_time_resolution(double a, double g, const ProbeSpec& probe);
double lorentzian_regime_ratio(double a, double g, std::int64_t n);

HighTempTimes high_temp_entangled_time(double alpha, double beta, double omega_c, std::int64_t n);

/// r^2 * omega_fast * t_e. omega_fast defaults to fastest_frequency(bath).
double zeno_diagnostic(const DephasingModel& deph, std::int64_t n, std::optional<double> omega_fast = std::nullopt);

} // namespace zeno
