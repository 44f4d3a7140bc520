#include "zeno/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "zeno/dephasing.hpp"
#include "zeno/errors.hpp"
#include "zeno/metrology.hpp"
#include "zeno/parallel.hpp"
#include "zeno/validation.hpp"

namespace zeno::cli {

namespace {

// ---------------------------------------------------------------- output

using Value = std::variant<double, std::int64_t, bool, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

enum class Format { Csv, Json };

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render(const Value& v, Format format) {
    return std::visit(
        [format](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                if (format == Format::Json && !std::isfinite(x)) return "null";
                return format_double(x);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(x);
            } else if constexpr (std::is_same_v<T, bool>) {
                return x ? "true" : "false";
            } else {
                return format == Format::Json ? "\"" + x + "\"" : x;
            }
        },
        v);
}

void write_records(std::ostream& os, const std::vector<Record>& records, Format format) {
    if (format == Format::Csv) {
        if (records.empty()) return;
        for (std::size_t i = 0; i < records.front().size(); ++i)
            os << (i ? "," : "") << records.front()[i].first;
        os << '\n';
        for (const auto& rec : records) {
            for (std::size_t i = 0; i < rec.size(); ++i) os << (i ? "," : "") << render(rec[i].second, format);
            os << '\n';
        }
        return;
    }
    for (const auto& rec : records) {
        os << '{';
        for (std::size_t i = 0; i < rec.size(); ++i)
            os << (i ? "," : "") << '"' << rec[i].first << "\":" << render(rec[i].second, format);
        os << "}\n";
    }
}

// ---------------------------------------------------------------- inputs

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ModelFlags {
    std::string model;
    std::optional<double> alpha, s, omega_c, a, g, nu, beta;
    std::string temp{"zero"};
    std::string route{"closed"};

    void attach(CLI::App& app) {
        app.add_option("--model", model, "powerlaw | ohmic | lorentzian | powerlaw-dephasing")
            ->required()
            ->check(CLI::IsMember({"powerlaw", "ohmic", "lorentzian", "powerlaw-dephasing"}));
        app.add_option("--alpha", alpha, "coupling alpha (power law, Ohmic, power-law dephasing)");
        app.add_option("--s", s, "bath exponent s (power law)");
        app.add_option("--omega-c", omega_c, "cutoff frequency omega_c (default 1)");
        app.add_option("--a", a, "Lorentzian coupling a");
        app.add_option("--g", g, "Lorentzian width g");
        app.add_option("--nu", nu, "exponent nu of gamma = alpha t^nu");
        app.add_option("--temp", temp, "zero | beta=<v> | high-t (high-t needs --beta)");
        app.add_option("--beta", beta, "inverse temperature for --temp high-t");
        app.add_option("--route", route, "closed | quad")->check(CLI::IsMember({"closed", "quad"}));
    }

    static double need(const std::optional<double>& v, const char* flag) {
        if (!v) throw UsageError(std::string("missing required flag ") + flag + " for this model");
        return *v;
    }

    BathSpec bath() const {
        BathSpec out;
        const double wc = omega_c.value_or(1.0);
        if (model == "powerlaw") out.spectral = PowerLawExpCutoff{need(alpha, "--alpha"), need(s, "--s"), wc};
        else if (model == "ohmic") out.spectral = PowerLawExpCutoff{need(alpha, "--alpha"), 1.0, wc};
        else if (model == "lorentzian") out.spectral = Lorentzian{need(a, "--a"), need(g, "--g")};
        else out.spectral = GenericPowerLawDephasing{need(alpha, "--alpha"), need(nu, "--nu")};

        if (temp == "zero") {
            out.temperature = ZeroTemperature{};
        } else if (temp.rfind("beta=", 0) == 0) {
            out.temperature = FiniteBeta{parse_double(temp.substr(5), "--temp beta=")};
        } else if (temp == "high-t") {
            out.temperature = HighTemperatureOhmic{need(beta, "--beta")};
        } else {
            throw UsageError("--temp must be zero, beta=<v> or high-t");
        }
        out.validate();
        return out;
    }

    DephasingModel dephasing() const {
        DephasingModel d{bath()};
        if (route == "quad") d.route = QuadratureRoute{};
        else if (!has_closed_form(d.bath)) throw NoClosedForm("no closed form for this bath; rerun with --route quad");
        return d;
    }

    static double parse_double(const std::string& text, const char* what) {
        try {
            std::size_t used = 0;
            const double v = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("cannot parse number for ") + what + ": '" + text + "'");
        }
    }
};

struct GridFlag {
    double lo{0.0};
    double hi{0.0};
    std::int64_t points{0};
    bool log{false};
};

GridFlag parse_grid(const std::string& text, const char* flag) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3 && !(parts.size() == 4 && (parts[3] == "log" || parts[3] == "lin")))
        throw UsageError(std::string(flag) + " expects min:max:points[:log]");
    GridFlag g;
    g.lo = ModelFlags::parse_double(parts[0], flag);
    g.hi = ModelFlags::parse_double(parts[1], flag);
    const double pts = ModelFlags::parse_double(parts[2], flag);
    if (pts < 1 || pts != std::floor(pts)) throw UsageError(std::string(flag) + " needs an integer point count >= 1");
    g.points = static_cast<std::int64_t>(pts);
    g.log = parts.size() == 4 && parts[3] == "log";
    if (!(g.hi >= g.lo) || (g.points > 1 && !(g.hi > g.lo))) throw UsageError(std::string(flag) + " needs min < max");
    if (g.log && !(g.lo > 0.0)) throw UsageError(std::string(flag) + " log spacing needs min > 0");
    return g;
}

std::vector<double> grid_values(const GridFlag& g) {
    std::vector<double> out;
    for (std::int64_t i = 0; i < g.points; ++i) {
        const double f = g.points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(g.points - 1);
        out.push_back(g.log ? g.lo * std::pow(g.hi / g.lo, f) : g.lo + (g.hi - g.lo) * f);
    }
    return out;
}

std::vector<std::int64_t> integer_grid(const GridFlag& g) {
    std::vector<std::int64_t> out;
    for (double v : grid_values(g)) {
        const auto n = static_cast<std::int64_t>(std::llround(v));
        if (n < 1) throw UsageError("particle counts must be >= 1");
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    return out;
}

Format parse_format(const std::string& f) { return f == "json" ? Format::Json : Format::Csv; }

void check_threads(int threads) {
    if (threads < 1) throw UsageError("--threads must be >= 1");
}

// ---------------------------------------------------------------- commands

int cmd_gamma(const ModelFlags& flags, const std::optional<double>& t, const std::string& t_grid, Format format,
              std::ostream& out) {
    if (t.has_value() == !t_grid.empty()) throw UsageError("give exactly one of --t or --t-grid");
    std::vector<double> times = t ? std::vector<double>{*t} : grid_values(parse_grid(t_grid, "--t-grid"));
    for (double v : times)
        if (!(v >= 0.0)) throw UsageError("times must be >= 0");
    const DephasingModel deph = flags.dephasing();
    std::vector<Record> rows;
    for (double v : times) {
        const double rate = v > 0.0 ? deph.rate(v) : dgamma_dt(deph, v);
        rows.push_back({{"t", v}, {"gamma", deph.gamma(v)}, {"dgamma_dt", rate}});
    }
    write_records(out, rows, format);
    return kOk;
}

int cmd_optimize(const ModelFlags& flags, std::int64_t n, double total_time, const std::string& strategy,
                 Format format, std::ostream& out) {
    ProbeSpec probe{n, total_time, strategy == "ghz" ? Strategy::MaximallyEntangled : Strategy::Uncorrelated};
    try {
        probe.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const DephasingModel deph = flags.dephasing();
    const Optimum opt = optimal_resolution(deph, probe);
    write_records(out,
                  {{{"t_opt", opt.t_opt},
                    {"delta_omega_sq", opt.delta_omega_sq},
                    {"k", std::int64_t{opt.k}},
                    {"finite", opt.finite},
                    {"boundary_limited", opt.boundary_limited}}},
                  format);
    return opt.boundary_limited ? kBoundaryLimited : kOk;
}

int cmd_ratio(const ModelFlags& flags, const std::string& n_grid, int threads, Format format, std::ostream& out) {
    check_threads(threads);
    const auto ns = integer_grid(parse_grid(n_grid, "--n-grid"));
    const DephasingModel deph = flags.dephasing();
    struct Row {
        RatioResult rr;
        bool limited{false};
    };
    const auto rows = parallel_map<Row>(ns.size(), threads, [&](std::size_t i) {
        try {
            return Row{ratio_r(deph, ns[i]), false};
        } catch (const NoFiniteOptimum&) {
            const double nan = std::nan("");
            return Row{{nan, nan, nan, nan}, true};
        }
    });
    std::vector<Record> records;
    bool any_limited = false;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double n = static_cast<double>(ns[i]);
        any_limited = any_limited || rows[i].limited;
        records.push_back({{"n", ns[i]},
                           {"r", rows[i].rr.r},
                           {"t_u", rows[i].rr.t_u},
                           {"t_e", rows[i].rr.t_e},
                           {"sqrt_n", std::sqrt(n)},
                           {"n_quarter", std::pow(n, 0.25)},
                           {"boundary_limited", rows[i].limited}});
    }
    write_records(out, records, format);
    return any_limited ? kBoundaryLimited : kOk;
}

int cmd_figure1(double alpha, std::int64_t n_max, const std::string& path, int threads, std::ostream& err) {
    check_threads(threads);
    if (!(alpha > 0.5)) throw UsageError("--alpha must be > 1/2 for the exact Ohmic ratio");
    if (n_max < 1) throw UsageError("--n-max must be >= 1");
    const DephasingModel deph{ohmic_bath(alpha)};
    const auto count = static_cast<std::size_t>(n_max);
    const auto pipeline = parallel_map<double>(count, threads, [&](std::size_t i) {
        return ratio_r(deph, static_cast<std::int64_t>(i) + 1).r;
    });
    std::vector<Record> records;
    for (std::size_t i = 0; i < count; ++i) {
        const auto n = static_cast<std::int64_t>(i) + 1;
        records.push_back({{"n", n},
                           {"r_exact", ohmic_exact_ratio(alpha, n)},
                           {"r_pipeline", pipeline[i]},
                           {"sqrt_n", std::sqrt(static_cast<double>(n))},
                           {"markov", 1.0}});
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "cannot open " << path << " for writing\n";
        return kIoError;
    }
    write_records(file, records, Format::Csv);
    file.flush();
    if (!file) {
        err << "failed writing " << path << "\n";
        return kIoError;
    }
    return kOk;
}

int cmd_validate(std::uint64_t seed, int trials, int threads, std::ostream& out) {
    check_threads(threads);
    if (trials < 1) throw UsageError("--trials must be >= 1");
    const ValidationReport report = run_validation(seed, trials, threads);
    out << "seed " << seed << ", trials " << trials << "\n";
    out << "optimum vs grid oracle: max rel delta_omega_sq " << format_double(report.max_rel_delta_omega_sq)
        << ", max rel t_opt " << format_double(report.max_rel_t_opt) << ", max phase error / grid step "
        << format_double(report.max_phase_excess) << "\n";
    out << "quadrature vs Romberg reference: max rel gamma " << format_double(report.max_rel_gamma) << "\n";
    out << "markov r deviation from 1: " << format_double(report.markov_r_deviation) << "\n";
    out << (report.passed ? "PASS" : "FAIL") << "\n";
    return report.passed ? kOk : kValidationFailed;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ramsey precision bounds under non-Markovian pure dephasing"};
    app.require_subcommand(1);

    std::string format_name = "csv";
    int threads = 1;

    ModelFlags gamma_flags;
    std::optional<double> t;
    std::string t_grid;
    auto* gamma_cmd = app.add_subcommand("gamma", "evaluate gamma(t) and its time derivative");
    gamma_flags.attach(*gamma_cmd);
    gamma_cmd->add_option("--t", t, "single time");
    gamma_cmd->add_option("--t-grid", t_grid, "min:max:points[:log]");
    gamma_cmd->add_option("--format", format_name)->check(CLI::IsMember({"csv", "json"}));

    ModelFlags opt_flags;
    std::int64_t n = 1;
    double total_time = 1.0;
    std::string strategy = "product";
    auto* opt_cmd = app.add_subcommand("optimize", "optimal interrogation time and frequency variance");
    opt_flags.attach(*opt_cmd);
    opt_cmd->add_option("--n", n, "particle count")->required();
    opt_cmd->add_option("--total-time", total_time, "total experiment time T")->required();
    opt_cmd->add_option("--strategy", strategy, "product | ghz")->check(CLI::IsMember({"product", "ghz"}));
    opt_cmd->add_option("--format", format_name)->check(CLI::IsMember({"csv", "json"}));

    ModelFlags ratio_flags;
    std::string n_grid;
    auto* ratio_cmd = app.add_subcommand("ratio", "sweep the entangled/product ratio r over n");
    ratio_flags.attach(*ratio_cmd);
    ratio_cmd->add_option("--n-grid", n_grid, "min:max:points[:log]")->required();
    ratio_cmd->add_option("--format", format_name)->check(CLI::IsMember({"csv", "json"}));
    ratio_cmd->add_option("--threads", threads);

    double fig_alpha = 1.0;
    std::int64_t n_max = 100;
    std::string out_path;
    auto* fig_cmd = app.add_subcommand("figure1", "Ohmic r(n) table: exact formula, pipeline and references");
    fig_cmd->add_option("--alpha", fig_alpha)->required();
    fig_cmd->add_option("--n-max", n_max)->required();
    fig_cmd->add_option("--out", out_path)->required();
    fig_cmd->add_option("--threads", threads);

    std::uint64_t seed = 1;
    int trials = 20;
    auto* val_cmd = app.add_subcommand("validate", "cross-check against the brute-force oracles");
    val_cmd->add_option("--seed", seed);
    val_cmd->add_option("--trials", trials);
    val_cmd->add_option("--threads", threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kBadArguments;
    }

    const Format format = parse_format(format_name);
    try {
        if (*gamma_cmd) return cmd_gamma(gamma_flags, t, t_grid, format, out);
        if (*opt_cmd) return cmd_optimize(opt_flags, n, total_time, strategy, format, out);
        if (*ratio_cmd) return cmd_ratio(ratio_flags, n_grid, threads, format, out);
        if (*fig_cmd) return cmd_figure1(fig_alpha, n_max, out_path, threads, err);
        if (*val_cmd) return cmd_validate(seed, trials, threads, out);
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return kBadArguments;
    } catch (const DomainError& e) {
        err << e.what() << "\n";
        return kBadArguments;
    } catch (const NoClosedForm& e) {
        err << e.what() << "\n";
        return kNoClosedForm;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kValidationFailed;
    }
    return kBadArguments;
}

} // namespace zeno::cli
