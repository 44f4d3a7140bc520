#include "zeno/metrology.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Bracket scan: start at 1e-6 / omega_fast, quarter-octave steps, at most
// 2^60 growth. Stop 8 octaves after the last sign change.
constexpr double kBracketStart = 1e-6;
constexpr int kStepsPerOctave = 4;
constexpr int kMaxOctaves = 60;
constexpr int kSettleOctaves = 8;

// ln of exp(2 m gamma) / t, the t-dependent part of delta omega^2 at k = 1.
double log_objective(const DephasingModel& deph, double m, double t) {
    return 2.0 * m * deph.gamma(t) - std::log(t);
}

double log_resolution(const DephasingModel& deph, const ProbeSpec& probe, double t) {
    const double n = static_cast<double>(probe.n);
    const double m = probe.multiplier();
    return log_objective(deph, m, t) - std::log(n * m * probe.total_time);
}

} // namespace

void ProbeSpec::validate() const {
    if (n < 1) throw DomainError("particle count n must be >= 1");
    if (!(total_time > 0.0) || !std::isfinite(total_time)) throw DomainError("total_time must be > 0");
}

double ProbeSpec::multiplier() const {
    return strategy == Strategy::Uncorrelated ? 1.0 : static_cast<double>(n);
}

double ramsey_probability(double phi, double t, double gamma_t) {
    if (!(t >= 0.0) || !(gamma_t >= 0.0)) throw DomainError("ramsey_probability needs t >= 0 and gamma >= 0");
    return 0.5 * (1.0 + std::cos(phi * t) * std::exp(-gamma_t));
}

double fisher_information(double phi, double t, double gamma_t) {
    if (!(t >= 0.0) || !(gamma_t >= 0.0)) throw DomainError("fisher_information needs t >= 0 and gamma >= 0");
    const double theta = phi * t;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double decay = std::exp(-2.0 * gamma_t);
    // 1 - c^2 e^{-2 gamma}, written to stay accurate when gamma is small
    const double spread = s * s - c * c * std::expm1(-2.0 * gamma_t);
    if (spread <= 0.0) throw DegenerateSignal("p0 is 0 or 1: no information about phi");
    return t * t * s * s * decay / spread;
}

double frequency_variance(double phi, double t, const ProbeSpec& probe, const DephasingModel& deph) {
    probe.validate();
    if (!(t > 0.0)) throw DomainError("interrogation time must be > 0");
    if (t > probe.total_time) throw DomainError("interrogation time exceeds total_time");
    const double m = probe.multiplier();
    const double theta = m * phi * t;
    const double gamma = m * deph.gamma(t);
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double loss = -std::expm1(-2.0 * gamma);
    if (s == 0.0) {
        if (loss == 0.0) throw DegenerateSignal("p0 is 0 or 1: no information about phi");
        return std::numeric_limits<double>::infinity();
    }
    const double n = static_cast<double>(probe.n);
    return (1.0 + (c * c) / (s * s) * loss) * std::exp(2.0 * gamma) / (n * m * probe.total_time * t);
}

double optimal_interrogation(const DephasingModel& deph, double m, const RootSettings& settings) {
    if (!(m >= 1.0)) throw DomainError("multiplier m must be >= 1");
    deph.bath.validate();
    auto constraint = [&](double t) { return 2.0 * m * t * deph.rate(t) - 1.0; };

    double t = kBracketStart / fastest_frequency(deph.bath);
    double value = constraint(t);
    for (int i = 0; value >= 0.0 && i < 400; ++i) {
        t *= 0.5;
        value = constraint(t);
    }
    if (value >= 0.0) throw NoFiniteOptimum("constraint is positive down to t = " + sci(t));

    const double step = std::exp2(1.0 / kStepsPerOctave);
    std::vector<double> roots;
    int since_last = 0;
    for (int k = 0; k < kMaxOctaves * kStepsPerOctave; ++k) {
        const double t_next = t * step;
        double value_next = 0.0;
        try {
            value_next = constraint(t_next);
        } catch (const ToleranceNotMet&) {
            break;  // quadrature cannot resolve times this long
        }
        // Minima of the objective are - to + crossings of the constraint.
        if (value < 0.0 && value_next >= 0.0) {
            roots.push_back(solve_bracketed_root(constraint, t, t_next, settings));
            since_last = 0;
        }
        if (!roots.empty() && ++since_last > kSettleOctaves * kStepsPerOctave) break;
        t = t_next;
        value = value_next;
    }
    if (roots.empty())
        throw NoFiniteOptimum("2 m t dgamma/dt stays below 1 (m = " + sci(m) + ")");

    double best = roots.front();
    double best_value = log_objective(deph, m, best);
    for (double root : roots) {
        const double v = log_objective(deph, m, root);
        if (v < best_value) {
            best = root;
            best_value = v;
        }
    }
    return best;
}

Optimum optimal_resolution(const DephasingModel& deph, const ProbeSpec& probe) {
    probe.validate();
    const double m = probe.multiplier();
    const double total = probe.total_time;

    Optimum out;
    out.k = 1;
    out.phase = kHalfPi;
    try {
        out.t_opt = optimal_interrogation(deph, m);
    } catch (const NoFiniteOptimum&) {
        out.finite = false;
        out.boundary_limited = true;
        out.t_opt = total;
    }
    if (out.finite && out.t_opt > total) {
        out.boundary_limited = true;
        out.t_opt = total;
    } else if (out.finite && log_resolution(deph, probe, total) < log_resolution(deph, probe, out.t_opt)) {
        // Saturating gamma (s > 1 at T = 0) keeps improving past the local optimum.
        out.boundary_limited = true;
        out.t_opt = total;
    }
    out.delta_omega_sq = std::exp(log_resolution(deph, probe, out.t_opt));
    return out;
}

RatioResult ratio_r(const DephasingModel& deph, std::int64_t n) {
    if (n < 1) throw DomainError("particle count n must be >= 1");
    const double nd = static_cast<double>(n);
    RatioResult out;
    out.t_u = optimal_interrogation(deph, 1.0);
    out.t_e = n == 1 ? out.t_u : optimal_interrogation(deph, nd);
    const double exponent = 2.0 * deph.gamma(out.t_u) - 2.0 * nd * deph.gamma(out.t_e);
    out.exponential_factor = std::exp(exponent);
    out.r = std::sqrt(nd * (out.t_e / out.t_u)) * std::exp(0.5 * exponent);
    return out;
}

double ohmic_exact_ratio(double alpha, std::int64_t n) {
    if (!(alpha > 0.5)) throw DomainError("exact Ohmic ratio requires alpha > 1/2");
    if (n < 1) throw DomainError("particle count n must be >= 1");
    const double nd = static_cast<double>(n);
    const double single = 2.0 * alpha - 1.0;
    const double many = 2.0 * nd * alpha - 1.0;
    // ln f^2 = alpha ln(2a/(2a-1)) - n alpha ln(2na/(2na-1)) + ln((2a-1)/(2na-1)) / 2
    const double log_f2 = alpha * std::log1p(1.0 / single) - nd * alpha * std::log1p(1.0 / many) +
                          0.5 * (std::log(single) - std::log(many));
    return std::sqrt(nd) * std::exp(0.5 * log_f2);
}

PowerLawScaling power_law_scaling(double nu, std::int64_t n) {
    if (!(nu > 0.0)) throw DomainError("nu must be > 0");
    if (n < 1) throw DomainError("particle count n must be >= 1");
    const double nd = static_cast<double>(n);
    return {std::pow(nd, (nu - 1.0) / (2.0 * nu)), std::pow(nd, 1.0 / nu)};
}

double lorentzian_newton_time(double a, double g, std::int64_t n) {
    if (!(a > 0.0) || !(g >= 0.0) || n < 1) throw DomainError("need a > 0, g >= 0, n >= 1");
    const double an = a * static_cast<double>(n);
    return std::sqrt(2.0 / an) * (1.0 + std::sqrt(g * g / (8.0 * an)));
}

double lorentzian_constraint(double a, double g, std::int64_t n, double t) {
    return a * static_cast<double>(n) * t * (-std::expm1(-g * t)) - 2.0 * g;
}

double lorentzian_newton_step(double a, double g, std::int64_t n) {
    if (!(a > 0.0) || !(g >= 0.0) || n < 1) throw DomainError("need a > 0, g >= 0, n >= 1");
    const double an = a * static_cast<double>(n);
    const double t0 = std::sqrt(2.0 / an);
    if (g == 0.0) return t0;
    const double decay = std::exp(-g * t0);
    const double f = lorentzian_constraint(a, g, n, t0);
    const double df = an * ((1.0 - decay) + g * t0 * decay);
    return t0 - f / df;
}

double lorentzian_short_time_resolution(double a, double g, const ProbeSpec& probe) {
    probe.validate();
    if (!(a > 0.0) || !(g >= 0.0)) throw DomainError("need a > 0 and g >= 0");
    const double n = static_cast<double>(probe.n);
    const bool product = probe.strategy == Strategy::Uncorrelated;
    const double an = product ? a : a * n;
    const double root = std::sqrt(8.0 * an);
    const double scale = product ? std::sqrt(a / 2.0) : std::sqrt(a / (2.0 * n));
    return scale / (n * probe.total_time) * root / (root + g) * std::exp(g / 3.0 * std::sqrt(2.0 / an) - 1.0);
}

double lorentzian_regime_ratio(double a, double g, std::int64_t n) {
    if (!(g > 0.0)) throw DomainError("lorentzian_regime_ratio needs g > 0");
    const DephasingModel deph{lorentzian_bath(a, g)};
    return ratio_r(deph, n).r;
}

HighTempTimes high_temp_entangled_time(double alpha, double beta, double omega_c, std::int64_t n) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(omega_c > 0.0) || n < 1)
        throw DomainError("need alpha, beta, omega_c > 0 and n >= 1");
    const double nd = static_cast<double>(n);
    HighTempTimes out;
    out.estimate = std::sqrt(beta / (4.0 * alpha * nd * omega_c));
    const DephasingModel deph{high_temperature_ohmic_bath(alpha, beta, omega_c)};
    out.solved = optimal_interrogation(deph, nd);
    out.prefactor = out.solved * std::sqrt(alpha * nd * omega_c / beta);
    out.zeno_valid = omega_c * out.solved < 0.1;
    return out;
}

double zeno_diagnostic(const DephasingModel& deph, std::int64_t n, std::optional<double> omega_fast) {
    const double w = omega_fast.value_or(fastest_frequency(deph.bath));
    const RatioResult rr = ratio_r(deph, n);
    return rr.r * rr.r * w * rr.t_e;
}

} // namespace zeno
