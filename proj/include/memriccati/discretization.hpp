#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "memriccati/lower_triangular.hpp"
#include "memriccati/problem.hpp"

namespace memriccati {

/// L1 weight for memory sub-interval i (1-based) at order q:
///   ω_i = h^(−q) / Γ(2 − q) · (i^(1−q) − (i − 1)^(1−q)).
double l1_weight(double order, double h, std::size_t i);

/// Weights ω_1..ω_k of node k computed from scratch, without caching.
///
/// CurrentTime orders freeze q = α(t_k) across the whole row; LagTime orders
/// use q_i = γ(lag_i) with lag_i chosen by the problem's lag sampling.
std::vector<double> weights(const Problem& problem, std::size_t k);

/// Difference scheme for a fixed problem: cached weight table, residual
/// vector F(U), and the analytic Jacobian ∂f_n/∂u_m.
///
/// Candidate vectors `u` hold u_1..u_N (length N); u_0 comes from the
/// problem. Node indices k, n, m are 1-based.
class Discretization {
public:
    explicit Discretization(Problem problem);

    const Problem& problem() const noexcept { return problem_; }
    std::size_t size() const noexcept { return problem_.grid().nodes(); }

    /// ω_1..ω_k of node k. For LagTime orders every row is a prefix of the
    /// same lag table.
    std::span<const double> weights(std::size_t k) const;

    /// f_k = Σ_{i=1..k} ω_i (u_{k−i+1} − u_{k−i}) + a_k u_k² + b_k u_k + c_k
    double residual(std::span<const double> u, std::size_t k) const;

    /// f_1..f_N
    std::vector<double> residuals(std::span<const double> u) const;

    /// R_{n,m}: zero for m > n, ω_1 + 2 a_n u_n + b_n on the diagonal,
    /// ω_{n−m+1} − ω_{n−m} below it.
    double jacobian_entry(std::span<const double> u, std::size_t n, std::size_t m) const;

    LowerTriangularMatrix jacobian(std::span<const double> u) const;

private:
    void check_length(std::span<const double> u) const;

    Problem problem_;
    // LagTime: N entries indexed by lag. CurrentTime: packed rows, row k at k(k−1)/2.
    std::vector<double> table_;
    std::vector<double> a_, b_, c_;
};

/// Residual of node k through a freshly built Discretization.
double residual(const Problem& problem, std::span<const double> u, std::size_t k);

/// Jacobian entry R_{n,m} through a freshly built Discretization.
double jacobian_entry(const Problem& problem, std::span<const double> u, std::size_t n, std::size_t m);

}  // namespace memriccati
