#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zeno/dephasing.hpp"
#include "zeno/metrology.hpp"

namespace zeno {

// Seeded cross-checks of the analytic machinery against the brute-force
// oracles. Used by `zeno validate` and the acceptance suite.

struct OptimumDraw {
    BathSpec bath;
    ProbeSpec probe;
};

struct GammaDraw {
    BathSpec bath;
    double t{1.0};
};

// Portable uniform in [0, 1) from the raw 64-bit stream.
double unit_uniform(std::mt19937_64& rng);

// Draw i cycles through power-law, Lorentzian and gamma = alpha t^nu models.
OptimumDraw draw_optimum_case(std::mt19937_64& rng, int index);
// Power-law baths at T = 0, finite beta and high T, plus T = 0 Lorentzians.
GammaDraw draw_gamma_case(std::mt19937_64& rng, int index);

std::string describe(const BathSpec& bath);

struct OptimumComparison {
    OptimumDraw draw;
    Optimum analytic;
    Optimum oracle;
    double rel_delta_omega_sq{0.0};
    double rel_t_opt{0.0};
    double phase_error{0.0};       // |oracle phase - pi/2|
    double phase_resolution{0.0};  // final oracle phase step
};

struct GammaComparison {
    GammaDraw draw;
    double quadrature{0.0};
    double reference{0.0};
    double rel_error{0.0};
};

OptimumComparison compare_optimum(const OptimumDraw& draw);
GammaComparison compare_gamma(const GammaDraw& draw);

struct ValidationTolerances {
    double optimum_rel{1e-4};
    double gamma_rel{1e-8};
    double markov_r{1e-6};
};

struct ValidationReport {
    std::vector<OptimumComparison> optima;
    std::vector<GammaComparison> gammas;
    double max_rel_delta_omega_sq{0.0};
    double max_rel_t_opt{0.0};
    double max_phase_excess{0.0};  // max of phase_error / phase_resolution
    double max_rel_gamma{0.0};
    double markov_r_deviation{0.0};
    bool passed{false};
};

ValidationReport run_validation(std::uint64_t seed, int trials, int threads = 1,
                                const ValidationTolerances& tol = {});

} // namespace zeno
