#include "zeno/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kPi = std::numbers::pi;

struct Incumbent {
    Eigen::Index t_index{0};
    Eigen::Index phase_index{0};
    double log_value{std::numeric_limits<double>::infinity()};
};

// ln delta omega^2 on a (t, phase) grid. gamma is evaluated once per t.
Incumbent scan(const DephasingModel& deph, const ProbeSpec& probe, const Eigen::VectorXd& log_t,
               const Eigen::VectorXd& phases) {
    const double n = static_cast<double>(probe.n);
    const double m = probe.multiplier();
    const Eigen::ArrayXd cot2 = phases.array().cos().square() / phases.array().sin().square();
    Incumbent best;
    for (Eigen::Index i = 0; i < log_t.size(); ++i) {
        const double t = std::exp(log_t(i));
        const double g = m * deph.gamma(t);
        const double loss = -std::expm1(-2.0 * g);
        const double base = 2.0 * g - std::log(n * m * probe.total_time * t);
        const Eigen::ArrayXd row = (1.0 + cot2 * loss).log() + base;
        Eigen::Index j = 0;
        const double v = row.minCoeff(&j);
        if (v < best.log_value) best = {i, j, v};
    }
    return best;
}

Eigen::VectorXd centred_window(double centre, double half_width, double lo, double hi, Eigen::Index count) {
    const double a = std::max(lo, centre - half_width);
    const double b = std::min(hi, centre + half_width);
    return Eigen::VectorXd::LinSpaced(count, a, b);
}

// Romberg on [lo, hi]: trapezoid with interval doubling plus a shallow
// Richardson table.
template <class F>
double romberg(const F& f, double lo, double hi, double rel_tol) {
    constexpr int kMaxLevels = 30;
    constexpr int kMinLevel = 7;
    constexpr int kDepth = 4;
    std::vector<std::vector<double>> table;
    double h = hi - lo;
    double trapezoid = 0.5 * h * (f(lo) + f(hi));
    double previous = std::numeric_limits<double>::quiet_NaN();
    int agreements = 0;
    for (int level = 0; level <= kMaxLevels; ++level) {
        if (level > 0) {
            const auto count = std::size_t{1} << (level - 1);
            double sum = 0.0;
            for (std::size_t i = 0; i < count; ++i) sum += f(lo + (static_cast<double>(i) + 0.5) * h);
            trapezoid = 0.5 * (trapezoid + h * sum);
            h *= 0.5;
        }
        std::vector<double> row{trapezoid};
        const int depth = std::min(level, kDepth);
        double factor = 1.0;
        for (int k = 1; k <= depth; ++k) {
            factor *= 4.0;
            row.push_back(row[k - 1] + (row[k - 1] - table.back()[k - 1]) / (factor - 1.0));
        }
        table.push_back(row);
        const double estimate = row.back();
        if (level >= kMinLevel && std::abs(estimate - previous) <= rel_tol * std::abs(estimate)) {
            if (++agreements >= 2) return estimate;
        } else {
            agreements = 0;
        }
        previous = estimate;
    }
    throw NonConvergence("Romberg did not converge after " + std::to_string(kMaxLevels) + " doublings");
}

} // namespace

void GridSpec::validate() const {
    if (!(t_min > 0.0) || !(t_max > t_min)) throw DomainError("grid needs 0 < t_min < t_max");
    if (points_per_decade < 20) throw DomainError("grid needs points_per_decade >= 20");
    if (phi_points < 3) throw DomainError("grid needs phi_points >= 3");
    if (refine_rounds < 2) throw DomainError("grid needs refine_rounds >= 2");
}

GridSpec default_grid(const BathSpec& bath) {
    const double w = fastest_frequency(bath);
    GridSpec grid;
    grid.t_min = 1e-4 / w;
    grid.t_max = 1e4 / w;
    return grid;
}

Optimum brute_force_optimum(const DephasingModel& deph, const ProbeSpec& probe, const GridSpec& grid) {
    grid.validate();
    probe.validate();
    const double lo = std::log(grid.t_min);
    const bool capped_by_total = probe.total_time < grid.t_max;
    const double hi = std::log(std::min(grid.t_max, probe.total_time));
    if (!(hi > lo)) throw DomainError("total_time lies below the grid's t_min");

    const auto t_count = static_cast<Eigen::Index>(std::ceil((hi - lo) / std::log(10.0) * grid.points_per_decade)) + 1;
    const auto phase_count = static_cast<Eigen::Index>(grid.phi_points);
    Eigen::VectorXd log_t = Eigen::VectorXd::LinSpaced(t_count, lo, hi);
    // Interior points only: phase = pi (j + 1) / (count + 1).
    Eigen::VectorXd phases = Eigen::VectorXd::LinSpaced(phase_count, kPi / (phase_count + 1.0),
                                                        kPi * phase_count / (phase_count + 1.0));
    const double phase_lo = phases(0);
    const double phase_hi = phases(phase_count - 1);

    Incumbent best = scan(deph, probe, log_t, phases);
    double t_span = hi - lo;
    double phase_span = phase_hi - phase_lo;
    for (int round = 0; round < grid.refine_rounds; ++round) {
        t_span /= 10.0;
        phase_span /= 10.0;
        log_t = centred_window(log_t(best.t_index), 0.5 * t_span, lo, hi, t_count);
        phases = centred_window(phases(best.phase_index), 0.5 * phase_span, phase_lo, phase_hi, phase_count);
        best = scan(deph, probe, log_t, phases);
    }

    const double log_t_best = log_t(best.t_index);
    const double phase_best = phases(best.phase_index);
    const bool at_lower = log_t_best <= lo;
    const bool at_upper = log_t_best >= hi;
    if (at_lower || (at_upper && !capped_by_total))
        throw GridTooCoarse("minimum sits on the grid boundary at t = " + sci(std::exp(log_t_best)));
    if (phase_best <= phase_lo || phase_best >= phase_hi)
        throw GridTooCoarse("minimum sits on the phase grid boundary");

    Optimum out;
    out.t_opt = std::exp(log_t_best);
    out.phase = phase_best;
    out.delta_omega_sq = std::exp(best.log_value);
    out.boundary_limited = at_upper;
    out.finite = !at_upper;
    const long half_turns = std::lround(phase_best / (0.5 * kPi));
    out.k = static_cast<int>(half_turns % 2 == 1 ? half_turns : half_turns + 1);
    return out;
}

double reference_gamma(const BathSpec& bath, double t) {
    bath.validate();
    if (!(t >= 0.0)) throw DomainError("time must be >= 0");
    if (const auto* lor = std::get_if<Lorentzian>(&bath.spectral)) {
        if (!std::holds_alternative<ZeroTemperature>(bath.temperature))
            throw DomainError("Lorentzian J(0) > 0 makes the thermal integral infrared divergent");
        if (!(lor->g > 0.0)) throw DomainError("reference_gamma needs g > 0");
    }
    if (std::holds_alternative<GenericPowerLawDephasing>(bath.spectral))
        throw NoSpectralDensity("gamma = alpha t^nu has no J(w) to integrate");
    if (t == 0.0) return 0.0;

    constexpr double kRelTol = 1e-10;
    if (const auto* lor = std::get_if<Lorentzian>(&bath.spectral)) {
        // w = g tan(theta) absorbs the Lorentzian: J dw = (a / pi) d theta.
        const double a = lor->a;
        const double g = lor->g;
        auto f = [&](double theta) {
            if (theta <= 0.0) return a / (2.0 * kPi) * 0.5 * t * t;
            if (theta >= 0.5 * kPi) return 0.0;
            const double w = g * std::tan(theta);
            const double half = std::sin(0.5 * w * t);
            return a / (2.0 * kPi) * 2.0 * half * half / (w * w);
        };
        return romberg(f, 0.0, 0.5 * kPi, kRelTol);
    }

    const auto& pl = std::get<PowerLawExpCutoff>(bath.spectral);
    double thermal_power = 0.0;
    auto weight = [&](double w) {
        if (const auto* fb = std::get_if<FiniteBeta>(&bath.temperature)) return 1.0 / std::tanh(0.5 * fb->beta * w);
        if (const auto* ht = std::get_if<HighTemperatureOhmic>(&bath.temperature)) return 2.0 / (ht->beta * w);
        return 1.0;
    };
    if (!std::holds_alternative<ZeroTemperature>(bath.temperature)) thermal_power = -1.0;

    // Integrand ~ w^p at the origin; w = W u^m gives u^(m(p+1)-1), which
    // vanishes to high order so the trapezoid error expansion starts late.
    const double p = pl.s + thermal_power;
    const double order = std::ceil(24.0 / (p + 1.0));
    const double m = order + std::fmod(order, 2.0);
    const double cutoff = 60.0 * std::max(1.0, pl.s) * pl.omega_c;
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double w = cutoff * std::pow(u, m);
        // Far below every bath scale the integrand is ~u^23 and negligible;
        // this also keeps sin^2 / w^2 out of underflow.
        if (w < 1e-30 * pl.omega_c) return 0.0;
        const double j = pl.alpha * std::pow(pl.omega_c, 1.0 - pl.s) * std::pow(w, pl.s) * std::exp(-w / pl.omega_c);
        const double half = std::sin(0.5 * w * t);
        const double kernel = 2.0 * half * half / (w * w);
        const double jacobian = cutoff * m * std::pow(u, m - 1.0);
        return 0.5 * j * weight(w) * kernel * jacobian;
    };
    return romberg(f, 0.0, 1.0, kRelTol);
}

} // namespace zeno
