#include "memriccati/discretization.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "memriccati/errors.hpp"
#include "memriccati/special_functions.hpp"

namespace memriccati {

namespace {

double row_order(const Problem& p, std::size_t k) {
    const double h = p.grid().step();
    return eval_order(p.order(), order_argument(p.sampling().argument, p.grid().time(k), h));
}

double lag_order(const Problem& p, std::size_t i) {
    const double h = p.grid().step();
    return eval_order(p.order(), order_argument(p.sampling().argument, sampled_lag(p.sampling().lag, i, h), h));
}

void check_node(std::size_t k, std::size_t n, const char* what) {
    if (k < 1 || k > n) {
        throw DomainError(std::string(what) + ": node index " + std::to_string(k) + " outside 1.." +
                          std::to_string(n));
    }
}

}  // namespace

double l1_weight(double order, double h, std::size_t i) {
    if (!(order > 0.0 && order < 1.0)) {
        throw DomainError("l1_weight: order must lie in (0, 1)");
    }
    const double e = 1.0 - order;
    const double x = static_cast<double>(i);
    return std::pow(h, -order) / gamma(2.0 - order) * (std::pow(x, e) - std::pow(x - 1.0, e));
}

std::vector<double> weights(const Problem& problem, std::size_t k) {
    check_node(k, problem.grid().nodes(), "weights");
    const double h = problem.grid().step();
    std::vector<double> w(k);
    if (problem.order().kind() == OrderKind::CurrentTime) {
        const double q = row_order(problem, k);
        for (std::size_t i = 1; i <= k; ++i) w[i - 1] = l1_weight(q, h, i);
    } else {
        for (std::size_t i = 1; i <= k; ++i) w[i - 1] = l1_weight(lag_order(problem, i), h, i);
    }
    return w;
}

Discretization::Discretization(Problem problem) : problem_(std::move(problem)) {
    const std::size_t n = size();
    const double h = problem_.grid().step();
    if (problem_.order().kind() == OrderKind::LagTime) {
        table_.resize(n);
        for (std::size_t i = 1; i <= n; ++i) table_[i - 1] = l1_weight(lag_order(problem_, i), h, i);
    } else {
        table_.resize(n * (n + 1) / 2);
        for (std::size_t k = 1; k <= n; ++k) {
            const double q = row_order(problem_, k);
            double* row = table_.data() + k * (k - 1) / 2;
            for (std::size_t i = 1; i <= k; ++i) row[i - 1] = l1_weight(q, h, i);
        }
    }
    a_.resize(n);
    b_.resize(n);
    c_.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
        a_[k - 1] = problem_.a(k);
        b_[k - 1] = problem_.b(k);
        c_[k - 1] = problem_.c(k);
    }
}

std::span<const double> Discretization::weights(std::size_t k) const {
    check_node(k, size(), "weights");
    if (problem_.order().kind() == OrderKind::LagTime) {
        return std::span<const double>(table_).first(k);
    }
    return std::span<const double>(table_).subspan(k * (k - 1) / 2, k);
}

void Discretization::check_length(std::span<const double> u) const {
    if (u.size() != size()) {
        throw DomainError("discretization: candidate has " + std::to_string(u.size()) +
                          " values, expected " + std::to_string(size()));
    }
}

double Discretization::residual(std::span<const double> u, std::size_t k) const {
    check_length(u);
    check_node(k, size(), "residual");
    const auto w = weights(k);
    const double u0 = problem_.u0();
    // u_j for j = 0..N
    auto at = [&](std::size_t j) { return j == 0 ? u0 : u[j - 1]; };
    double memory = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
        memory += w[i - 1] * (at(k - i + 1) - at(k - i));
    }
    const double uk = u[k - 1];
    return memory + a_[k - 1] * uk * uk + b_[k - 1] * uk + c_[k - 1];
}

std::vector<double> Discretization::residuals(std::span<const double> u) const {
    check_length(u);
    const std::size_t n = size();
    // d_j = u_j − u_{j−1}, j = 1..N
    std::vector<double> diff(n);
    double prev = problem_.u0();
    for (std::size_t j = 0; j < n; ++j) {
        diff[j] = u[j] - prev;
        prev = u[j];
    }
    std::vector<double> f(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const auto w = weights(k);
        double memory = 0.0;
        for (std::size_t i = 1; i <= k; ++i) {
            memory += w[i - 1] * diff[k - i];
        }
        const double uk = u[k - 1];
        f[k - 1] = memory + a_[k - 1] * uk * uk + b_[k - 1] * uk + c_[k - 1];
    }
    return f;
}

double Discretization::jacobian_entry(std::span<const double> u, std::size_t n, std::size_t m) const {
    check_length(u);
    check_node(n, size(), "jacobian_entry");
    check_node(m, size(), "jacobian_entry");
    if (m > n) {
        return 0.0;
    }
    const auto w = weights(n);
    if (m == n) {
        return w[0] + 2.0 * a_[n - 1] * u[n - 1] + b_[n - 1];
    }
    return w[n - m] - w[n - m - 1];
}

LowerTriangularMatrix Discretization::jacobian(std::span<const double> u) const {
    check_length(u);
    const std::size_t n = size();
    LowerTriangularMatrix jac(n);
    for (std::size_t row = 1; row <= n; ++row) {
        const auto w = weights(row);
        double* out = jac.row_data(row - 1);
        for (std::size_t m = 1; m < row; ++m) {
            out[m - 1] = w[row - m] - w[row - m - 1];
        }
        out[row - 1] = w[0] + 2.0 * a_[row - 1] * u[row - 1] + b_[row - 1];
    }
    return jac;
}

double residual(const Problem& problem, std::span<const double> u, std::size_t k) {
    return Discretization(problem).residual(u, k);
}

double jacobian_entry(const Problem& problem, std::span<const double> u, std::size_t n, std::size_t m) {
    return Discretization(problem).jacobian_entry(u, n, m);
}

}  // namespace memriccati
