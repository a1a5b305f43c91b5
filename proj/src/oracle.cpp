#include "memriccati/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "memriccati/discretization.hpp"
#include "memriccati/errors.hpp"

namespace memriccati::oracle {

ContinuousCoefficients ramp_continuous(double horizon) {
    return ContinuousCoefficients{
        [horizon](double t) { return -t / horizon; },
        [](double) { return 0.0; },
        [horizon](double t) { return t / horizon; },
    };
}

ContinuousCoefficients constant_continuous(double a, double b, double c) {
    return ContinuousCoefficients{
        [a](double) { return a; },
        [b](double) { return b; },
        [c](double) { return c; },
    };
}

SolutionSeries rk4_classic(const ContinuousCoefficients& coeffs, double u0, double horizon, std::size_t steps) {
    if (steps == 0) throw DomainError("rk4: step count must be positive");
    if (!(horizon > 0.0)) throw DomainError("rk4: horizon must be positive");
    auto rhs = [&](double t, double u) { return -(coeffs.a(t) * u * u + coeffs.b(t) * u + coeffs.c(t)); };

    const double h = horizon / static_cast<double>(steps);
    SolutionSeries out;
    out.times.reserve(steps);
    out.values.reserve(steps);
    double u = u0;
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * h;
        const double k1 = rhs(t, u);
        const double k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
        const double k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
        const double k4 = rhs(t + h, u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.times.push_back(static_cast<double>(n + 1) * h);
        out.values.push_back(u);
    }
    return out;
}

SolutionSeries rk4_on_grid(const ContinuousCoefficients& coeffs, double u0, const Grid& grid, std::size_t refine) {
    if (refine == 0) throw DomainError("rk4: refinement factor must be positive");
    const auto fine = rk4_classic(coeffs, u0, grid.horizon(), refine * grid.nodes());
    SolutionSeries out;
    out.times = grid.node_times();
    out.values.resize(grid.nodes());
    for (std::size_t k = 1; k <= grid.nodes(); ++k) {
        out.values[k - 1] = fine.values[k * refine - 1];
    }
    return out;
}

SolutionSeries sequential_march(const Problem& problem, double eps, std::size_t max_iterations) {
    if (!(eps > 0.0)) throw DomainError("sequential_march: eps must be positive");
    const Discretization scheme(problem);
    const std::size_t n = scheme.size();

    std::vector<double> u(n + 1);
    u[0] = problem.u0();
    std::size_t total_iterations = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto w = scheme.weights(k);
        double history = 0.0;
        for (std::size_t i = 2; i <= k; ++i) {
            history += w[i - 1] * (u[k - i + 1] - u[k - i]);
        }
        const double a = problem.a(k);
        const double b = problem.b(k);
        const double c = problem.c(k);
        const double prev = u[k - 1];

        double x = prev;
        bool done = false;
        for (std::size_t it = 0; it < max_iterations; ++it) {
            const double f = w[0] * (x - prev) + history + a * x * x + b * x + c;
            const double df = w[0] + 2.0 * a * x + b;
            if (df == 0.0 || !std::isfinite(df)) break;
            const double dx = f / df;
            x -= dx;
            ++total_iterations;
            if (std::abs(dx) <= eps) {
                done = true;
                break;
            }
        }
        if (!done || !std::isfinite(x)) {
            throw NonConvergence("sequential_march: scalar Newton failed at node " + std::to_string(k),
                                 max_iterations, std::nan(""));
        }
        u[k] = x;
    }

    SolutionSeries out;
    out.times = problem.grid().node_times();
    out.values.assign(u.begin() + 1, u.end());
    out.newton_iterations = total_iterations;
    out.final_residual_norm = 0.0;
    for (double f : scheme.residuals(out.values)) {
        out.final_residual_norm = std::max(out.final_residual_norm, std::abs(f));
    }
    return out;
}

}  // namespace memriccati::oracle
