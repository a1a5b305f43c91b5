#include "memriccati/cli.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "memriccati/csv.hpp"
#include "memriccati/errors.hpp"
#include "memriccati/oracle.hpp"

namespace memriccati::cli {

namespace {

// Evaluated orders of presets whose range touches 0 or 1 are pinned this far inside.
constexpr double kPresetClampMargin = 1e-9;
constexpr double kExample1Order = 0.9999;

// Verify-mode acceptance bounds.
constexpr double kVariantAgreement = 1e-12;
constexpr double kClassicalDistance = 0.05;
constexpr double kSaturationDistance = 0.05;

const std::map<std::string, Mode> kModes{
    {"solve", Mode::Solve}, {"study", Mode::Study}, {"verify", Mode::Verify}};

const std::map<std::string, Preset> kPresets{
    {"example1", Preset::Example1}, {"example2", Preset::Example2},         {"example3", Preset::Example3},
    {"example4", Preset::Example4}, {"figure-verify", Preset::FigureVerify}, {"custom", Preset::Custom}};

const std::map<std::string, VariantSelector> kVariants{
    {"alpha", VariantSelector::Alpha}, {"gamma", VariantSelector::Gamma}, {"both", VariantSelector::Both}};

const std::map<std::string, CoefficientForm> kCoefficientForms{
    {"ramp", CoefficientForm::Ramp}, {"constant", CoefficientForm::Constant}};

const std::map<std::string, LinearBackend> kBackends{
    {"triangular", LinearBackend::TriangularSubstitution}, {"gauss-jordan", LinearBackend::GaussJordan}};
const std::map<std::string, InitialGuess> kInitialGuesses{
    {"march", InitialGuess::LinearizedMarch}, {"constant", InitialGuess::ConstantU0}};

const std::map<std::string, OrderArgument> kOrderArguments{
    {"physical", OrderArgument::Physical}, {"literal", OrderArgument::Literal}};

const std::map<std::string, LagSampling> kLagSamplings{
    {"left", LagSampling::LeftEdge}, {"midpoint", LagSampling::Midpoint}};

const std::map<std::string, LogBase> kLogBases{{"two", LogBase::Two}, {"step-ratio", LogBase::StepRatio}};

const std::map<std::string, RungeAlignment> kAlignments{
    {"literal", RungeAlignment::Literal}, {"interpolated", RungeAlignment::Interpolated}};

// Options a named preset pins.
const std::vector<std::string> kLockedOptions{"--order", "--delta", "--theta", "--mu",
                                              "--coefficients", "--a", "--b", "--c"};

std::vector<std::string> keys_of(const auto& table) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : table) keys.push_back(k);
    return keys;
}

std::string variant_tag(OrderKind kind) { return kind == OrderKind::CurrentTime ? "alpha" : "gamma"; }

std::vector<std::size_t> grid_sizes(const RunConfig& config) {
    if (config.mode != Mode::Study) return {config.nodes};
    const auto schedule = study_schedule(config);
    std::vector<std::size_t> sizes{coarse_partner(schedule.levels.front())};
    sizes.insert(sizes.end(), schedule.levels.begin(), schedule.levels.end());
    return sizes;
}

void check_config(const RunConfig& config) {
    if (!std::isfinite(config.horizon) || config.horizon <= 0.0) throw UsageError("--T must be positive");
    if (config.nodes < 1) throw UsageError("--N must be at least 1");
    if (!std::isfinite(config.u0)) throw UsageError("--u0 must be finite");
    if (!(config.newton.eps > 0.0)) throw UsageError("--eps must be positive");
    if (config.newton.max_iterations < 1) throw UsageError("--max-iterations must be at least 1");
    if (config.mode == Mode::Study) {
        try {
            study_schedule(config).validate();
        } catch (const DomainError& e) {
            throw UsageError(std::string("--levels/--base-nodes: ") + e.what());
        }
    }
    ProblemTemplate problem = [&] {
        try {
            return make_template(config);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }();
    for (OrderKind kind : selected_kinds(config)) {
        for (std::size_t n : grid_sizes(config)) {
            try {
                (void)problem.instantiate(n, kind);
            } catch (const DomainError& e) {
                std::ostringstream out;
                out << variant_tag(kind) << " operator, N=" << n << ": " << e.what();
                throw UsageError(out.str());
            }
        }
    }
}

double max_abs_difference(const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
    return m;
}

}  // namespace

std::string preset_name(Preset preset) {
    for (const auto& [name, p] : kPresets) {
        if (p == preset) return name;
    }
    return "unknown";
}

RunConfig parse_config(std::span<const std::string> args) {
    if (args.empty()) {
        throw UsageError("missing mode; expected one of: solve, study, verify");
    }

    RunConfig config;
    CLI::App app{"Fractional Riccati solver with variable-order memory operators", "memriccati"};
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "TOML/INI file with option defaults");

    std::string mode, preset, variant, coefficients, backend, initial_guess, order_argument, lag_sampling, log_base,
        alignment;
    app.add_option("mode", mode, "solve | study | verify")->required()->check(CLI::IsMember(keys_of(kModes)));
    app.add_option("--preset", preset, "example1..example4, figure-verify, custom")
        ->check(CLI::IsMember(keys_of(kPresets)));
    app.add_option("--variant", variant, "alpha | gamma | both")->check(CLI::IsMember(keys_of(kVariants)));
    app.add_option("--T", config.horizon, "simulation horizon");
    app.add_option("--N", config.nodes, "grid node count (solve, verify)");
    app.add_option("--u0", config.u0, "initial value");
    app.add_option("--order", config.order_value, "constant fractional order (custom)");
    app.add_option("--delta", config.delta, "periodic order shift (custom)");
    app.add_option("--theta", config.theta, "periodic order amplitude (custom)");
    app.add_option("--mu", config.mu, "periodic order frequency (custom)");
    app.add_option("--coefficients", coefficients, "ramp | constant (custom)")
        ->check(CLI::IsMember(keys_of(kCoefficientForms)));
    app.add_option("--a", config.a, "constant coefficient a (custom)");
    app.add_option("--b", config.b, "constant coefficient b (custom)");
    app.add_option("--c", config.c, "constant coefficient c (custom)");
    app.add_option("--eps", config.newton.eps, "Newton step-norm tolerance");
    app.add_option("--max-iterations", config.newton.max_iterations, "Newton iteration budget");
    app.add_option("--backend", backend, "triangular | gauss-jordan")->check(CLI::IsMember(keys_of(kBackends)));
    app.add_option("--initial-guess", initial_guess, "march | constant")
        ->check(CLI::IsMember(keys_of(kInitialGuesses)));
    app.add_option("--order-argument", order_argument, "physical | literal")
        ->check(CLI::IsMember(keys_of(kOrderArguments)));
    app.add_option("--lag-sampling", lag_sampling, "left | midpoint")
        ->check(CLI::IsMember(keys_of(kLagSamplings)));
    app.add_option("--log-base", log_base, "two | step-ratio")->check(CLI::IsMember(keys_of(kLogBases)));
    app.add_option("--alignment", alignment, "literal | interpolated")
        ->check(CLI::IsMember(keys_of(kAlignments)));
    app.add_option("--base-nodes", config.study_base, "first study level");
    app.add_option("--levels", config.study_levels, "number of study levels");
    app.add_flag("--serial", [&config](std::int64_t) { config.parallel = false; }, "solve study levels sequentially");
    app.add_option("--out-dir", config.out_dir, "output directory")->envname("MEMRICCATI_OUT");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    config.mode = kModes.at(mode);
    if (!preset.empty()) {
        config.preset = kPresets.at(preset);
    } else {
        config.preset = config.mode == Mode::Verify ? Preset::FigureVerify : Preset::Example1;
    }
    if (!variant.empty()) config.variant = kVariants.at(variant);
    if (!coefficients.empty()) config.coefficients = kCoefficientForms.at(coefficients);
    if (!backend.empty()) config.newton.linear_backend = kBackends.at(backend);
    if (!initial_guess.empty()) config.newton.initial_guess = kInitialGuesses.at(initial_guess);
    if (!order_argument.empty()) config.sampling.argument = kOrderArguments.at(order_argument);
    if (!lag_sampling.empty()) config.sampling.lag = kLagSamplings.at(lag_sampling);
    if (!log_base.empty()) config.log_base = kLogBases.at(log_base);
    if (!alignment.empty()) config.alignment = kAlignments.at(alignment);

    if (config.preset != Preset::Custom) {
        for (const auto& name : kLockedOptions) {
            if (app.count(name) > 0) {
                throw UsageError(name + " cannot override preset " + preset_name(config.preset));
            }
        }
    } else {
        if (config.order_value && (config.delta || config.theta || config.mu)) {
            throw UsageError("--order conflicts with --delta/--theta/--mu");
        }
        if (!config.delta && (config.theta || config.mu)) {
            throw UsageError("--theta/--mu need --delta");
        }
    }
    if (config.mode == Mode::Verify && config.preset != Preset::FigureVerify) {
        throw UsageError("verify runs preset figure-verify only, got --preset " + preset_name(config.preset));
    }

    check_config(config);
    return config;
}

ProblemTemplate make_template(const RunConfig& config) {
    const double quarter_turn = std::numbers::pi / 2.0;
    auto periodic = [quarter_turn](double delta) {
        return OrderSpec::periodic(OrderKind::CurrentTime, delta, 0.5, quarter_turn);
    };
    ProblemTemplate t{config.horizon, ramp_coefficients(), config.u0,
                      OrderSpec::constant(OrderKind::CurrentTime, kExample1Order), config.sampling};
    switch (config.preset) {
        case Preset::Example1:
            break;
        case Preset::Example2:
            t.order = periodic(0.75).with_clamp(kPresetClampMargin);
            break;
        case Preset::Example3:
            t.order = periodic(0.5);
            break;
        case Preset::Example4:
            t.order = periodic(0.25).with_clamp(kPresetClampMargin);
            break;
        case Preset::FigureVerify:
            t.coeffs = constant_coefficients(-1.0, 0.0, 1.0);
            break;
        case Preset::Custom:
            if (config.order_value) {
                t.order = OrderSpec::constant(OrderKind::CurrentTime, *config.order_value);
            } else if (config.delta) {
                t.order = OrderSpec::periodic(OrderKind::CurrentTime, *config.delta, config.theta.value_or(0.5),
                                              config.mu.value_or(quarter_turn));
            }
            if (config.coefficients == CoefficientForm::Constant) {
                t.coeffs = constant_coefficients(config.a, config.b, config.c);
            }
            break;
    }
    return t;
}

std::vector<OrderKind> selected_kinds(const RunConfig& config) {
    switch (config.variant) {
        case VariantSelector::Alpha:
            return {OrderKind::CurrentTime};
        case VariantSelector::Gamma:
            return {OrderKind::LagTime};
        case VariantSelector::Both:
            break;
    }
    return {OrderKind::CurrentTime, OrderKind::LagTime};
}

RefinementSchedule study_schedule(const RunConfig& config) {
    return RefinementSchedule::doubling(config.study_base, config.study_levels);
}

int run(const RunConfig& config, std::ostream& log) {
    const ProblemTemplate problem = make_template(config);
    const std::string name = preset_name(config.preset);
    std::vector<std::pair<std::filesystem::path, std::string>> outputs;
    int status = kSuccess;

    switch (config.mode) {
        case Mode::Solve: {
            for (OrderKind kind : selected_kinds(config)) {
                const auto outcome = solve(problem.instantiate(config.nodes, kind), config.newton);
                log << name << " " << variant_tag(kind) << ": N=" << config.nodes << " iterations=" << outcome.iterations
                    << " step=" << outcome.last_step_norm
                    << " residual=" << outcome.solution.final_residual_norm << "\n";
                outputs.emplace_back(config.out_dir / (name + "_" + variant_tag(kind) + "_solution.csv"),
                                     csv::solution_to_csv(outcome.solution));
            }
            break;
        }
        case Mode::Study: {
            StudyOptions options;
            options.newton = config.newton;
            options.alignment = config.alignment;
            options.log_base = config.log_base;
            options.parallel = config.parallel;
            const auto report = run_study(problem, study_schedule(config), selected_kinds(config), options);
            const std::string table = csv::report_to_csv(report);
            log << table;
            outputs.emplace_back(config.out_dir / (name + "_study.csv"), table);
            break;
        }
        case Mode::Verify: {
            const auto alpha = solve(problem.instantiate(config.nodes, OrderKind::CurrentTime), config.newton).solution;
            const auto gamma = solve(problem.instantiate(config.nodes, OrderKind::LagTime), config.newton).solution;
            const auto classic = oracle::rk4_on_grid(oracle::constant_continuous(-1.0, 0.0, 1.0), config.u0,
                                                     Grid(config.horizon, config.nodes));
            const double variant_gap = max_abs_difference(alpha.values, gamma.values);
            const double classic_gap = std::max(max_abs_difference(alpha.values, classic.values),
                                                max_abs_difference(gamma.values, classic.values));
            const double saturation_gap = std::abs(std::abs(alpha.values.back()) - 1.0);
            log << std::setprecision(6) << "max|alpha-gamma|=" << variant_gap << " max|u-rk4|=" << classic_gap
                << " ||u(T)|-1|=" << saturation_gap << "\n";
            if (variant_gap > kVariantAgreement || classic_gap > kClassicalDistance ||
                saturation_gap > kSaturationDistance) {
                log << "verify: check failed\n";
                status = kSolverFailure;
            }
            outputs.emplace_back(config.out_dir / "verify_alpha.csv", csv::solution_to_csv(alpha));
            outputs.emplace_back(config.out_dir / "verify_gamma.csv", csv::solution_to_csv(gamma));
            outputs.emplace_back(config.out_dir / "verify_rk4.csv", csv::solution_to_csv(classic));
            break;
        }
    }

    std::filesystem::create_directories(config.out_dir);
    for (const auto& [path, contents] : outputs) {
        csv::write_file(path, contents);
        log << "wrote " << path.string() << "\n";
    }
    return status;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_config(args);
    } catch (const HelpRequested& help) {
        out << help.text;
        return kSuccess;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    }
    try {
        return run(config, out);
    } catch (const std::ios_base::failure& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << "\n";
        return kSolverFailure;
    }
}

}  // namespace memriccati::cli
