#include "zeno/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zeno/oracle.hpp"
#include "zeno/parallel.hpp"

namespace zeno {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo * std::pow(hi / lo, unit_uniform(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

OptimumDraw draw_optimum_case(std::mt19937_64& rng, int index) {
    OptimumDraw d;
    switch (index % 3) {
    case 0: d.bath = power_law_bath(uniform(rng, 0.6, 3.0), uniform(rng, 0.5, 3.0), log_uniform(rng, 0.1, 10.0)); break;
    case 1: d.bath = lorentzian_bath(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.01, 10.0)); break;
    default: d.bath = power_law_dephasing(log_uniform(rng, 0.1, 10.0), uniform(rng, 0.5, 3.0)); break;
    }
    d.probe.n = 1 + static_cast<std::int64_t>(unit_uniform(rng) * 50.0);
    d.probe.strategy = unit_uniform(rng) < 0.5 ? Strategy::Uncorrelated : Strategy::MaximallyEntangled;
    d.probe.total_time = log_uniform(rng, 1.0, 100.0) / fastest_frequency(d.bath);
    return d;
}

GammaDraw draw_gamma_case(std::mt19937_64& rng, int index) {
    GammaDraw d;
    const double s_values[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    const double alpha = log_uniform(rng, 0.1, 10.0);
    const double omega_c = log_uniform(rng, 0.1, 10.0);
    switch (index % 4) {
    case 0: d.bath = power_law_bath(alpha, uniform(rng, 0.3, 3.5), omega_c); break;
    case 1: {
        const double s = s_values[static_cast<int>(unit_uniform(rng) * 6.0)];
        d.bath = {PowerLawExpCutoff{alpha, s, omega_c}, FiniteBeta{log_uniform(rng, 0.1, 10.0) / omega_c}};
        break;
    }
    case 2: d.bath = high_temperature_ohmic_bath(alpha, log_uniform(rng, 0.1, 10.0) / omega_c, omega_c); break;
    default: d.bath = lorentzian_bath(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)); break;
    }
    d.t = log_uniform(rng, 0.01, 100.0) / fastest_frequency(d.bath);
    return d;
}

std::string describe(const BathSpec& bath) {
    std::ostringstream os;
    os.precision(6);
    if (const auto* m = std::get_if<PowerLawExpCutoff>(&bath.spectral))
        os << "powerlaw(alpha=" << m->alpha << ",s=" << m->s << ",omega_c=" << m->omega_c << ")";
    else if (const auto* l = std::get_if<Lorentzian>(&bath.spectral))
        os << "lorentzian(a=" << l->a << ",g=" << l->g << ")";
    else if (const auto* p = std::get_if<GenericPowerLawDephasing>(&bath.spectral))
        os << "powerlaw-dephasing(alpha=" << p->alpha << ",nu=" << p->nu << ")";
    if (const auto* fb = std::get_if<FiniteBeta>(&bath.temperature)) os << " beta=" << fb->beta;
    if (const auto* ht = std::get_if<HighTemperatureOhmic>(&bath.temperature)) os << " high-t beta=" << ht->beta;
    return os.str();
}

OptimumComparison compare_optimum(const OptimumDraw& draw) {
    const DephasingModel deph{draw.bath};
    const GridSpec grid = default_grid(draw.bath);
    OptimumComparison c;
    c.draw = draw;
    c.analytic = optimal_resolution(deph, draw.probe);
    c.oracle = brute_force_optimum(deph, draw.probe, grid);
    c.rel_delta_omega_sq = rel_diff(c.oracle.delta_omega_sq, c.analytic.delta_omega_sq);
    c.rel_t_opt = rel_diff(c.oracle.t_opt, c.analytic.t_opt);
    c.phase_error = std::abs(c.oracle.phase - 0.5 * std::numbers::pi);
    c.phase_resolution = std::numbers::pi / (grid.phi_points + 1.0) * std::pow(10.0, -grid.refine_rounds);
    return c;
}

GammaComparison compare_gamma(const GammaDraw& draw) {
    GammaComparison c;
    c.draw = draw;
    c.quadrature = gamma_quadrature(draw.bath, draw.t).value;
    c.reference = reference_gamma(draw.bath, draw.t);
    c.rel_error = rel_diff(c.quadrature, c.reference);
    return c;
}

ValidationReport run_validation(std::uint64_t seed, int trials, int threads, const ValidationTolerances& tol) {
    std::mt19937_64 rng(seed);
    std::vector<OptimumDraw> optimum_draws;
    std::vector<GammaDraw> gamma_draws;
    for (int i = 0; i < trials; ++i) optimum_draws.push_back(draw_optimum_case(rng, i));
    for (int i = 0; i < trials; ++i) gamma_draws.push_back(draw_gamma_case(rng, i));
    const double gamma0 = std::pow(10.0, uniform(rng, -1.0, 1.0));
    const auto markov_n = 2 + static_cast<std::int64_t>(unit_uniform(rng) * 999.0);

    ValidationReport report;
    report.optima = parallel_map<OptimumComparison>(optimum_draws.size(), threads,
                                                    [&](std::size_t i) { return compare_optimum(optimum_draws[i]); });
    report.gammas = parallel_map<GammaComparison>(gamma_draws.size(), threads,
                                                  [&](std::size_t i) { return compare_gamma(gamma_draws[i]); });
    for (const auto& c : report.optima) {
        report.max_rel_delta_omega_sq = std::max(report.max_rel_delta_omega_sq, c.rel_delta_omega_sq);
        report.max_rel_t_opt = std::max(report.max_rel_t_opt, c.rel_t_opt);
        // Only interior optima sit at the k = 1 operating point by construction.
        report.max_phase_excess = std::max(report.max_phase_excess, c.phase_error / c.phase_resolution);
    }
    for (const auto& c : report.gammas) report.max_rel_gamma = std::max(report.max_rel_gamma, c.rel_error);
    report.markov_r_deviation = std::abs(ratio_r(DephasingModel{markov_bath(gamma0)}, markov_n).r - 1.0);

    report.passed = report.max_rel_delta_omega_sq <= tol.optimum_rel && report.max_rel_t_opt <= tol.optimum_rel &&
                    report.max_phase_excess <= 1.0 && report.max_rel_gamma <= tol.gamma_rel &&
                    report.markov_r_deviation <= tol.markov_r;
    return report;
}

} // namespace zeno
