#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "memriccati/convergence.hpp"
#include "memriccati/newton_solver.hpp"
#include "memriccati/problem.hpp"

namespace memriccati::cli {

enum class Mode { Solve, Study, Verify };

enum class Preset { Example1, Example2, Example3, Example4, FigureVerify, Custom };

enum class VariantSelector { Alpha, Gamma, Both };

enum class CoefficientForm { Ramp, Constant };

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kSolverFailure = 3,
    kIoFailure = 4,
};

struct RunConfig {
    Mode mode = Mode::Solve;
    Preset preset = Preset::Example1;
    VariantSelector variant = VariantSelector::Both;

    double horizon = 50.0;
    std::size_t nodes = 2000;
    double u0 = 0.0;

    // Custom preset only.
    std::optional<double> order_value;
    std::optional<double> delta;
    std::optional<double> theta;
    std::optional<double> mu;
    CoefficientForm coefficients = CoefficientForm::Constant;
    double a = -1.0;
    double b = 0.0;
    double c = 1.0;

    NewtonSettings newton;
    OrderSampling sampling;
    LogBase log_base = LogBase::Two;
    RungeAlignment alignment = RungeAlignment::Literal;
    std::size_t study_base = 129;
    std::size_t study_levels = 5;
    bool parallel = true;

    std::filesystem::path out_dir = ".";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by parse_config for --help; carries the rendered help text.
struct HelpRequested {
    std::string text;
};

/// Parses command-line arguments (without the program name). A `--config`
/// file supplies defaults that explicit flags override; unknown keys are
/// rejected. Named presets lock their order and coefficients: only grid,
/// tolerance, u0 and diagnostic switches may be overridden. Order bounds are
/// checked on every grid the run will use.
///
/// Throws UsageError (with the offending token) or HelpRequested.
RunConfig parse_config(std::span<const std::string> args);

std::string preset_name(Preset preset);

/// Problem data for the configured preset, order kind left to the caller.
ProblemTemplate make_template(const RunConfig& config);

/// Order kinds selected by the variant switch.
std::vector<OrderKind> selected_kinds(const RunConfig& config);

RefinementSchedule study_schedule(const RunConfig& config);

/// Executes the configured run, writing CSV files under config.out_dir after
/// all computation finishes. Progress lines go to `log`.
///
/// Returns kSuccess, or kSolverFailure when a verify check misses its bound.
/// Solver and I/O failures propagate as exceptions.
int run(const RunConfig& config, std::ostream& log);

/// parse_config + run with every failure mapped to an exit code and a
/// one-line diagnostic on `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace memriccati::cli
