#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

namespace zeno {

struct QuadratureSettings {
    double rel_tol{1e-9};
    double abs_tol{1e-14};
    std::size_t max_panels{4096};       // adaptive subdivisions allowed past the initial partition
    double small_omega_cutoff{1e-4};    // series region [0, cutoff * omega_scale]

    void validate() const;
};

struct RootSettings {
    double x_tol{1e-12};
    double f_tol{1e-12};
    std::size_t max_iter{200};

    void validate() const;
};

/// Round-off floor for a result whose integrand has integral of |f| equal to abs_integral.
double roundoff_floor(double abs_integral);

struct QuadratureResult {
    double value{0.0};
    double error{0.0};
    double abs_integral{0.0};  // integral of |f|; sets the round-off floor
    std::size_t panels{0};
};

struct PowerLawFit {
    double exponent{0.0};
    double log_prefactor{0.0};
    double residual_rms{0.0};
};

using RealFunction = std::function<double(double)>;

// Adaptive 15-point Gauss-Kronrod over [lo, hi]. The interval is first cut
// geometrically towards `lo` (so integrable power-law behaviour at the left
// end is resolved) and then into panels no wider than `max_panel_width`.
// Panels are bisected worst-first until the summed error estimate drops below
// max(abs_tol, rel_tol * |value|, round-off floor), the floor being a small
// multiple of machine epsilon times the integral of |f|.
QuadratureResult integrate_interval(const RealFunction& f, double lo, double hi,
                                    const QuadratureSettings& settings,
                                    double max_panel_width = std::numeric_limits<double>::infinity());

// Integral over (0, upper_cutoff]. The integrand must already be regular at 0.
QuadratureResult integrate_semi_infinite(const RealFunction& f, double upper_cutoff,
                                         const QuadratureSettings& settings,
                                         double max_panel_width = std::numeric_limits<double>::infinity());

// Safeguarded secant iteration with bisection fallback. The iterate never
// leaves [lo, hi].
double solve_bracketed_root(const RealFunction& g, double lo, double hi,
                            const RootSettings& settings = {});

// Unweighted least squares of ln y against ln x.
PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

} // namespace zeno
