#include "zeno/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/errors.hpp"

namespace zeno {

void QuadratureSettings::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureSettings.rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSettings.abs_tol must be >= 0");
    if (max_panels < 16) throw DomainError("QuadratureSettings.max_panels must be >= 16");
    if (!(small_omega_cutoff > 0.0 && small_omega_cutoff < 1.0))
        throw DomainError("QuadratureSettings.small_omega_cutoff must lie in (0, 1)");
}

void RootSettings::validate() const {
    if (!(x_tol > 0.0)) throw DomainError("RootSettings.x_tol must be > 0");
    if (!(f_tol >= 0.0)) throw DomainError("RootSettings.f_tol must be >= 0");
    if (max_iter < 8) throw DomainError("RootSettings.max_iter must be >= 8");
}

double roundoff_floor(double abs_integral) {
    return 100.0 * std::numeric_limits<double>::epsilon() * abs_integral;
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    double abs_value;
};

struct ByError {
    bool operator()(const Panel& a, const Panel& b) const { return a.error < b.error; }
};

Panel kronrod15(const RealFunction& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double f_centre = f(centre);

    double result_gauss = f_centre * kWg[3];
    double result_kronrod = f_centre * kWgk[7];
    double result_abs = std::abs(result_kronrod);
    std::array<double, 7> f_lo{};
    std::array<double, 7> f_hi{};

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f_lo[j] = f(centre - dx);
        f_hi[j] = f(centre + dx);
        const double pair = f_lo[j] + f_hi[j];
        result_kronrod += kWgk[j] * pair;
        result_abs += kWgk[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
        if (j % 2 == 1) result_gauss += kWg[j / 2] * pair;
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = kWgk[7] * std::abs(f_centre - mean);
    for (std::size_t j = 0; j < 7; ++j)
        result_asc += kWgk[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));

    const double abs_half = std::abs(half);
    result_asc *= abs_half;
    result_abs *= abs_half;
    double err = std::abs((result_kronrod - result_gauss) * half);
    if (result_asc != 0.0 && err != 0.0)
        err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * result_abs, err);

    return {lo, hi, result_kronrod * half, err, result_abs};
}

std::vector<double> initial_breakpoints(double lo, double hi, double max_width) {
    // Geometric cuts towards lo resolve integrable power laws at the left end.
    std::vector<double> cuts;
    double b = hi;
    constexpr int kMaxHalvings = 48;
    const double floor = std::max(lo, hi * std::ldexp(1.0, -kMaxHalvings));
    cuts.push_back(hi);
    while (b * 0.5 > floor) {
        b *= 0.5;
        cuts.push_back(b);
    }
    cuts.push_back(lo);
    std::reverse(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    if (!std::isfinite(max_width)) return cuts;

    constexpr double kMaxInitialPanels = 4.0e6;
    if ((hi - lo) / max_width > kMaxInitialPanels)
        throw ToleranceNotMet("initial partition would exceed " +
                              std::to_string(static_cast<long>(kMaxInitialPanels)) + " panels");

    std::vector<double> out;
    out.push_back(cuts.front());
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        const double a = cuts[i - 1];
        const double c = cuts[i];
        const auto pieces = static_cast<std::size_t>(std::ceil((c - a) / max_width));
        for (std::size_t k = 1; k < pieces; ++k)
            out.push_back(a + (c - a) * static_cast<double>(k) / static_cast<double>(pieces));
        out.push_back(c);
    }
    return out;
}

} // namespace

QuadratureResult integrate_interval(const RealFunction& f, double lo, double hi,
                                    const QuadratureSettings& settings, double max_panel_width) {
    settings.validate();
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("integrate_interval requires finite lo <= hi");
    if (!(max_panel_width > 0.0)) throw DomainError("max_panel_width must be > 0");
    if (lo == hi) return {};

    const auto cuts = initial_breakpoints(lo, hi, max_panel_width);
    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    double value = 0.0;
    double error = 0.0;
    double abs_value = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        Panel p = kronrod15(f, cuts[i - 1], cuts[i]);
        value += p.value;
        error += p.error;
        abs_value += p.abs_value;
        heap.push(p);
    }

    std::size_t subdivisions = 0;
    auto target = [&] {
        return std::max({settings.abs_tol, settings.rel_tol * std::abs(value), roundoff_floor(abs_value)});
    };
    while (error > target()) {
        if (!std::isfinite(value)) throw DomainError("integrand produced a non-finite value");
        if (subdivisions >= settings.max_panels)
            throw ToleranceNotMet("error estimate " + sci(error) + " exceeds target " +
                                  sci(target()) + " after " +
                                  std::to_string(subdivisions) + " subdivisions");
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi)
            throw ToleranceNotMet("panel collapsed to machine precision");
        const Panel left = kronrod15(f, worst.lo, mid);
        const Panel right = kronrod15(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to drop the drift from incremental updates.
    value = 0.0;
    error = 0.0;
    abs_value = 0.0;
    const std::size_t panels = heap.size();
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        abs_value += heap.top().abs_value;
        heap.pop();
    }
    return {value, error, abs_value, panels};
}

QuadratureResult integrate_semi_infinite(const RealFunction& f, double upper_cutoff,
                                         const QuadratureSettings& settings, double max_panel_width) {
    if (!(upper_cutoff > 0.0)) throw DomainError("upper_cutoff must be > 0");
    return integrate_interval(f, 0.0, upper_cutoff, settings, max_panel_width);
}

double solve_bracketed_root(const RealFunction& g, double lo, double hi, const RootSettings& settings) {
    settings.validate();
    if (!(lo <= hi)) std::swap(lo, hi);
    double f_lo = g(lo);
    double f_hi = g(hi);
    if (std::isnan(f_lo) || std::isnan(f_hi)) throw DomainError("root function is NaN at bracket end");
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi))
        throw NoSignChange("g(" + sci(lo) + ") and g(" + sci(hi) +
                           ") have the same sign");

    // Two most recent iterates drive the secant; [lo, hi] always brackets.
    double x_prev = lo;
    double f_prev = f_lo;
    double x = hi;
    double fx = f_hi;
    if (std::abs(f_lo) < std::abs(f_hi)) {
        std::swap(x_prev, x);
        std::swap(f_prev, fx);
    }
    double last_width = hi - lo;

    for (std::size_t iter = 0; iter < settings.max_iter; ++iter) {
        if (std::abs(fx) <= settings.f_tol) return x;
        const double width = hi - lo;
        if (width <= settings.x_tol * std::abs(x) + std::numeric_limits<double>::min() ||
            std::nextafter(lo, hi) >= hi)
            return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;

        const double mid = 0.5 * (lo + hi);
        double candidate = mid;
        bool secant = false;
        if (fx != f_prev) {
            const double s = x - fx * (x - x_prev) / (fx - f_prev);
            // Force a bisection if the bracket stalled over the last step.
            if (s > lo && s < hi && width <= 0.5 * last_width * 1.5) {
                candidate = s;
                secant = true;
            }
        }
        last_width = width;

        double f_candidate = g(candidate);
        if (std::isnan(f_candidate)) throw DomainError("root function returned NaN");
        if (secant && std::abs(f_candidate) >= std::abs(fx)) {
            // Secant did not improve the residual: bisect instead.
            if (std::signbit(f_candidate) == std::signbit(f_lo)) {
                lo = candidate;
                f_lo = f_candidate;
            } else {
                hi = candidate;
                f_hi = f_candidate;
            }
            candidate = 0.5 * (lo + hi);
            f_candidate = g(candidate);
            if (std::isnan(f_candidate)) throw DomainError("root function returned NaN");
        }

        if (f_candidate == 0.0) return candidate;
        if (std::signbit(f_candidate) == std::signbit(f_lo)) {
            lo = candidate;
            f_lo = f_candidate;
        } else {
            hi = candidate;
            f_hi = f_candidate;
        }
        x_prev = x;
        f_prev = fx;
        x = candidate;
        fx = f_candidate;
    }
    if (std::abs(fx) <= settings.f_tol) return x;
    throw MaxIterations("no convergence within " + std::to_string(settings.max_iter) + " iterations");
}

PowerLawFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DomainError("fit_power_law: xs and ys differ in length");
    if (xs.size() < 3) throw DomainError("fit_power_law needs at least 3 points");
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double y = ys[static_cast<std::size_t>(i)];
        if (!(x > 0.0) || !(y > 0.0)) throw DomainError("fit_power_law requires positive inputs");
        if (i > 0 && !(x > xs[static_cast<std::size_t>(i - 1)]))
            throw DomainError("fit_power_law requires strictly increasing xs");
        design(i, 0) = std::log(x);
        design(i, 1) = 1.0;
        rhs(i) = std::log(y);
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd residual = design * coef - rhs;
    return {coef(0), coef(1), std::sqrt(residual.squaredNorm() / static_cast<double>(n))};
}

} // namespace zeno
