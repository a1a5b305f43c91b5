#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "memriccati/grid.hpp"
#include "memriccati/order_function.hpp"

namespace memriccati {

/// Coefficients a_k, b_k, c_k of a·u² + b·u + c, each a function of the node
/// index k and the node count N.
struct CoefficientSet {
    using Fn = std::function<double(std::size_t k, std::size_t n)>;
    Fn a;
    Fn b;
    Fn c;
};

/// a_k = −k/N, b_k = 0, c_k = k/N.
CoefficientSet ramp_coefficients();

CoefficientSet constant_coefficients(double a, double b, double c);

/// Cauchy problem on a uniform grid. The order kind selects the operator:
/// CurrentTime → α(t), LagTime → γ(t − τ).
class Problem {
public:
    /// Throws DomainError when u0 is not finite, the order breaks its
    /// invariants, a coefficient is non-finite at some node, or the order
    /// leaves (0, 1) at an argument the discretization will use.
    Problem(Grid grid, CoefficientSet coeffs, double u0, OrderSpec order, OrderSampling sampling = {});

    const Grid& grid() const noexcept { return grid_; }
    const CoefficientSet& coefficients() const noexcept { return coeffs_; }
    double u0() const noexcept { return u0_; }
    const OrderSpec& order() const noexcept { return order_; }
    const OrderSampling& sampling() const noexcept { return sampling_; }

    double a(std::size_t k) const { return coeffs_.a(k, grid_.nodes()); }
    double b(std::size_t k) const { return coeffs_.b(k, grid_.nodes()); }
    double c(std::size_t k) const { return coeffs_.c(k, grid_.nodes()); }

private:
    Grid grid_;
    CoefficientSet coeffs_;
    double u0_;
    OrderSpec order_;
    OrderSampling sampling_;
};

/// Everything but the node count; instantiates concrete problems for a
/// refinement study.
struct ProblemTemplate {
    double horizon;
    CoefficientSet coeffs;
    double u0;
    OrderSpec order;
    OrderSampling sampling;

    Problem instantiate(std::size_t nodes, OrderKind kind) const;
};

/// Values u_1..u_N at t_1..t_N.
struct SolutionSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::size_t newton_iterations = 0;
    double final_residual_norm = 0.0;
};

enum class KernelVariant { AlphaOfT, GammaOfLag };

/// Memory function K(t − τ) = (t − τ)^(−q) / Γ(1 − q), with q the order at t
/// (AlphaOfT) or at the lag t − τ (GammaOfLag). Requires 0 <= τ < t.
double kernel_eval(KernelVariant variant, const OrderSpec& spec, double t, double tau);

}  // namespace memriccati
