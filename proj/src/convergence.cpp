#include "memriccati/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <sstream>
#include <utility>

#include "memriccati/errors.hpp"

namespace memriccati {

RefinementSchedule RefinementSchedule::doubling(std::size_t base, std::size_t count) {
    RefinementSchedule s;
    std::size_t n = base;
    for (std::size_t j = 0; j < count; ++j) {
        s.levels.push_back(n);
        n = 2 * n + 1;
    }
    return s;
}

RefinementSchedule RefinementSchedule::standard() { return doubling(129, 5); }

void RefinementSchedule::validate() const {
    if (levels.size() < 2) {
        throw DomainError("schedule: at least two levels are needed to form an observed order");
    }
    for (std::size_t j = 0; j < levels.size(); ++j) {
        if (levels[j] < 3 || levels[j] % 2 == 0) {
            throw DomainError("schedule: level " + std::to_string(levels[j]) + " must be odd and at least 3");
        }
        if (j > 0 && levels[j] != 2 * levels[j - 1] + 1) {
            throw DomainError("schedule: level " + std::to_string(levels[j]) + " is not 2·" +
                              std::to_string(levels[j - 1]) + " + 1");
        }
    }
}

std::size_t coarse_partner(std::size_t nodes) { return (nodes - 1) / 2; }

namespace {

double interpolate(const SolutionSeries& s, double t) {
    const auto& ts = s.times;
    auto hi = std::lower_bound(ts.begin(), ts.end(), t);
    if (hi == ts.end()) return s.values.back();
    const auto j = static_cast<std::size_t>(hi - ts.begin());
    if (j == 0 || *hi == t) return s.values[j];
    const double w = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
    return (1.0 - w) * s.values[j - 1] + w * s.values[j];
}

}  // namespace

double runge_error(const SolutionSeries& coarse, const SolutionSeries& fine, int p_aprior,
                   RungeAlignment alignment) {
    const std::size_t n = coarse.values.size();
    if (n == 0 || fine.values.size() != 2 * n + 1) {
        throw DomainError("runge_error: fine series must hold 2N + 1 values for N = " + std::to_string(n));
    }
    if (p_aprior < 1) {
        throw DomainError("runge_error: a priori order must be at least 1");
    }
    const double denom = std::pow(2.0, p_aprior) - 1.0;
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        const double uf = alignment == RungeAlignment::Literal ? fine.values[2 * k - 2]
                                                               : interpolate(fine, coarse.times.at(k - 1));
        worst = std::max(worst, std::abs(uf - coarse.values[k - 1]) / denom);
    }
    return worst;
}

double observed_order(double eps_prev, double eps_cur, double h_prev, double h_cur, LogBase base) {
    if (!(eps_prev > 0.0) || !(eps_cur > 0.0) || !(h_prev > 0.0) || !(h_cur > 0.0)) {
        throw DomainError("observed_order: errors and steps must be positive");
    }
    const double ratio = std::log(eps_prev / eps_cur);
    if (base == LogBase::Two) {
        return ratio / std::log(2.0);
    }
    if (h_prev == h_cur) {
        throw DomainError("observed_order: equal steps give no logarithm base");
    }
    return ratio / std::log(h_prev / h_cur);
}

ConvergenceReport run_study(const ProblemTemplate& problem, const RefinementSchedule& schedule,
                            const std::vector<OrderKind>& variants, const StudyOptions& options) {
    schedule.validate();
    if (variants.empty()) {
        throw DomainError("run_study: no operator variant requested");
    }

    std::vector<std::size_t> sizes{coarse_partner(schedule.levels.front())};
    sizes.insert(sizes.end(), schedule.levels.begin(), schedule.levels.end());

    using Key = std::pair<OrderKind, std::size_t>;
    auto solve_level = [&problem, &options](OrderKind kind, std::size_t nodes) -> SolutionSeries {
        try {
            return solve(problem.instantiate(nodes, kind), options.newton).solution;
        } catch (const std::exception& e) {
            std::ostringstream out;
            out << (kind == OrderKind::CurrentTime ? "alpha" : "gamma") << " operator, N=" << nodes << ": "
                << e.what();
            throw StudyError(out.str());
        }
    };

    std::map<Key, SolutionSeries> solutions;
    if (options.parallel) {
        std::vector<std::pair<Key, std::future<SolutionSeries>>> pending;
        for (OrderKind kind : variants) {
            for (std::size_t n : sizes) {
                pending.emplace_back(Key{kind, n}, std::async(std::launch::async, solve_level, kind, n));
            }
        }
        // Wait for every task before rethrowing so no thread outlives the captures.
        std::exception_ptr first_error;
        for (auto& [key, fut] : pending) {
            try {
                solutions.emplace(key, fut.get());
            } catch (...) {
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
    } else {
        for (OrderKind kind : variants) {
            for (std::size_t n : sizes) solutions.emplace(Key{kind, n}, solve_level(kind, n));
        }
    }

    ConvergenceReport report;
    report.horizon = problem.horizon;
    for (std::size_t n : schedule.levels) {
        ConvergenceRow row;
        row.nodes = n;
        row.step = problem.horizon / static_cast<double>(n);
        report.rows.push_back(row);
    }
    for (OrderKind kind : variants) {
        for (std::size_t j = 0; j < report.rows.size(); ++j) {
            auto& row = report.rows[j];
            auto& column = kind == OrderKind::CurrentTime ? row.alpha : row.gamma;
            const auto& coarse = solutions.at({kind, coarse_partner(row.nodes)});
            const auto& fine = solutions.at({kind, row.nodes});
            column.eps = runge_error(coarse, fine, options.p_aprior, options.alignment);
            if (j > 0) {
                const auto& prev = report.rows[j - 1];
                const auto& prev_col = kind == OrderKind::CurrentTime ? prev.alpha : prev.gamma;
                column.p = observed_order(*prev_col.eps, *column.eps, prev.step, row.step, options.log_base);
            }
        }
    }
    return report;
}

}  // namespace memriccati
