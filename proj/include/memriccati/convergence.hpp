#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "memriccati/newton_solver.hpp"
#include "memriccati/problem.hpp"

namespace memriccati {

/// Grid levels N_0, N_1, … with N_{j+1} = 2·N_j + 1 (129, 259, 519, …).
///
/// The error reported on level N compares that grid against its coarse
/// partner (N − 1)/2, so every level must be odd and at least 3.
struct RefinementSchedule {
    std::vector<std::size_t> levels;

    /// `count` levels starting at `base`.
    static RefinementSchedule doubling(std::size_t base, std::size_t count);

    /// 129, 259, 519, 1039, 2079
    static RefinementSchedule standard();

    /// Throws DomainError when the refinement rule or the oddness requirement is broken.
    void validate() const;
};

/// (N − 1)/2: the grid whose refinement is N.
std::size_t coarse_partner(std::size_t nodes);

enum class RungeAlignment {
    Literal,       ///< fine node 2k − 1 against coarse node k
    Interpolated,  ///< fine solution linearly interpolated to coarse node times
};

enum class LogBase {
    Two,        ///< p = log2(ε_prev / ε_cur)
    StepRatio,  ///< p = log_{h_prev/h_cur}(ε_prev / ε_cur)
};

/// Runge-rule estimate max_k |u_fine − u_coarse| / (2^p_aprior − 1).
/// `fine` must have 2·N + 1 values for an N-value `coarse`.
double runge_error(const SolutionSeries& coarse, const SolutionSeries& fine, int p_aprior = 1,
                   RungeAlignment alignment = RungeAlignment::Literal);

/// Observed order from two successive errors. Inputs must be positive.
double observed_order(double eps_prev, double eps_cur, double h_prev, double h_cur, LogBase base = LogBase::Two);

struct VariantColumn {
    std::optional<double> eps;
    std::optional<double> p;
};

struct ConvergenceRow {
    std::size_t nodes = 0;
    double step = 0.0;
    VariantColumn alpha;
    VariantColumn gamma;
};

struct ConvergenceReport {
    double horizon = 0.0;
    std::vector<ConvergenceRow> rows;
};

struct StudyOptions {
    NewtonSettings newton;
    int p_aprior = 1;
    RungeAlignment alignment = RungeAlignment::Literal;
    LogBase log_base = LogBase::Two;
    /// Solve independent levels on separate threads.
    bool parallel = true;
};

/// A solver failure inside a refinement study, tagged with the level.
class StudyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solves the template at every level (and the base level's coarse partner)
/// for each requested operator kind and assembles one row per level.
/// Rows are ordered by level regardless of completion order.
ConvergenceReport run_study(const ProblemTemplate& problem, const RefinementSchedule& schedule,
                            const std::vector<OrderKind>& variants, const StudyOptions& options = {});

}  // namespace memriccati
