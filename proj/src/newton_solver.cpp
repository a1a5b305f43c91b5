#include "memriccati/newton_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "memriccati/errors.hpp"

namespace memriccati {

namespace {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string pivot_message(const char* where, std::size_t row, double value) {
    std::ostringstream out;
    out << where << ": |pivot| " << std::abs(value) << " at row " << row << " below singular tolerance";
    return out.str();
}

std::vector<double> forward_substitution(const LowerTriangularMatrix& jac, std::span<const double> rhs,
                                         double tol) {
    const std::size_t n = jac.size();
    std::vector<double> x(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = jac.row_data(r);
        double acc = rhs[r];
        for (std::size_t c = 0; c < r; ++c) acc -= row[c] * x[c];
        if (!(std::abs(row[r]) >= tol)) {
            throw SingularJacobian(pivot_message("triangular substitution", r + 1, row[r]), r + 1);
        }
        x[r] = acc / row[r];
    }
    return x;
}

// Reduces [J | I] to [I | J⁻¹] with partial pivoting, then returns J⁻¹·rhs.
std::vector<double> gauss_jordan(const LowerTriangularMatrix& jac, std::span<const double> rhs, double tol) {
    const std::size_t n = jac.size();
    const std::size_t width = 2 * n;
    std::vector<double> aug(n * width, 0.0);
    auto at = [&](std::size_t r, std::size_t c) -> double& { return aug[r * width + c]; };
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c <= r; ++c) at(r, c) = jac(r, c);
        at(r, n + r) = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
        }
        if (!(std::abs(at(pivot, col)) >= tol)) {
            throw SingularJacobian(pivot_message("gauss-jordan", col + 1, at(pivot, col)), col + 1);
        }
        if (pivot != col) {
            std::swap_ranges(aug.begin() + static_cast<std::ptrdiff_t>(pivot * width),
                             aug.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * width),
                             aug.begin() + static_cast<std::ptrdiff_t>(col * width));
        }
        const double inv = 1.0 / at(col, col);
        for (std::size_t c = 0; c < width; ++c) at(col, c) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double factor = at(r, col);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < width; ++c) at(r, c) -= factor * at(col, c);
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) acc += at(r, n + c) * rhs[c];
        x[r] = acc;
    }
    return x;
}

}  // namespace

std::vector<double> solve_linear(const LowerTriangularMatrix& jac, std::span<const double> rhs,
                                 LinearBackend backend, double singular_tolerance) {
    if (rhs.size() != jac.size()) {
        throw DomainError("solve_linear: right-hand side length does not match matrix size");
    }
    switch (backend) {
        case LinearBackend::TriangularSubstitution:
            return forward_substitution(jac, rhs, singular_tolerance);
        case LinearBackend::GaussJordan:
            return gauss_jordan(jac, rhs, singular_tolerance);
    }
    throw DomainError("solve_linear: unknown backend");
}

std::vector<double> initial_iterate(const Discretization& scheme, InitialGuess guess, double singular_tolerance) {
    const Problem& problem = scheme.problem();
    const std::size_t n = scheme.size();
    if (guess == InitialGuess::ConstantU0) {
        return std::vector<double>(n, problem.u0());
    }
    // u[j] holds u_j for j = 0..N
    std::vector<double> u(n + 1);
    u[0] = problem.u0();
    for (std::size_t k = 1; k <= n; ++k) {
        const auto w = scheme.weights(k);
        double history = 0.0;
        for (std::size_t i = 2; i <= k; ++i) history += w[i - 1] * (u[k - i + 1] - u[k - i]);
        const double prev = u[k - 1];
        const double f = history + problem.a(k) * prev * prev + problem.b(k) * prev + problem.c(k);
        const double df = w[0] + 2.0 * problem.a(k) * prev + problem.b(k);
        u[k] = std::abs(df) >= singular_tolerance ? prev - f / df : prev;
    }
    return std::vector<double>(u.begin() + 1, u.end());
}

NewtonOutcome solve(const Discretization& scheme, const NewtonSettings& settings) {
    if (!(settings.eps > 0.0)) throw DomainError("newton: eps must be positive");
    if (settings.max_iterations < 1) throw DomainError("newton: max_iterations must be at least 1");

    const Problem& problem = scheme.problem();
    std::vector<double> u = initial_iterate(scheme, settings.initial_guess, settings.singular_tolerance);
    double step_norm = settings.initial_residual.value_or(1e3 * settings.eps);
    std::size_t iterations = 0;

    while (step_norm > settings.eps) {
        if (iterations == settings.max_iterations) {
            std::ostringstream out;
            out << "newton: no convergence after " << iterations << " iterations (last step norm "
                << step_norm << ")";
            throw NonConvergence(out.str(), iterations, step_norm);
        }
        const auto f = scheme.residuals(u);
        const auto jac = scheme.jacobian(u);
        const auto delta = solve_linear(jac, f, settings.linear_backend, settings.singular_tolerance);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] -= delta[k];
        step_norm = max_abs(delta);
        if (!std::isfinite(step_norm)) {
            throw NonConvergence("newton: iterate diverged to a non-finite value", iterations + 1, step_norm);
        }
        ++iterations;
    }

    NewtonOutcome outcome;
    outcome.iterations = iterations;
    outcome.converged = true;
    outcome.last_step_norm = step_norm;
    outcome.solution.times = problem.grid().node_times();
    outcome.solution.newton_iterations = iterations;
    outcome.solution.final_residual_norm = max_abs(scheme.residuals(u));
    outcome.solution.values = std::move(u);
    return outcome;
}

NewtonOutcome solve(const Problem& problem, const NewtonSettings& settings) {
    return solve(Discretization(problem), settings);
}

}  // namespace memriccati
