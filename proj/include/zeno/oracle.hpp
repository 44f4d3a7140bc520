#pragma once

#include "zeno/dephasing.hpp"
#include "zeno/metrology.hpp"

namespace zeno {

// Brute-force references. Slow on purpose and independent of the
// constraint solver and of the adaptive quadrature.

struct GridSpec {
    double t_min{1e-4};
    double t_max{1e4};
    int points_per_decade{50};
    int phi_points{181};
    int refine_rounds{4};

    void validate() const;
};

/// Spans [1e-4, 1e4] / omega_fast with the default resolution.
GridSpec default_grid(const BathSpec& bath);

/// Joint grid minimization of frequency_variance over the signal phase
/// m phi t in (0, pi) and log-spaced t in [t_min, min(t_max, T)], zooming 10x
/// around the incumbent per refinement round.
Optimum brute_force_optimum(const DephasingModel& deph, const ProbeSpec& probe, const GridSpec& grid);

/// Romberg integration of the dephasing integral after a substitution that
/// makes the integrand smooth at the origin.
double reference_gamma(const BathSpec& bath, double t);

} // namespace zeno
