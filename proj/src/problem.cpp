#include "memriccati/problem.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "memriccati/errors.hpp"
#include "memriccati/special_functions.hpp"

namespace memriccati {

CoefficientSet ramp_coefficients() {
    return CoefficientSet{
        [](std::size_t k, std::size_t n) { return -static_cast<double>(k) / static_cast<double>(n); },
        [](std::size_t, std::size_t) { return 0.0; },
        [](std::size_t k, std::size_t n) { return static_cast<double>(k) / static_cast<double>(n); },
    };
}

CoefficientSet constant_coefficients(double a, double b, double c) {
    return CoefficientSet{
        [a](std::size_t, std::size_t) { return a; },
        [b](std::size_t, std::size_t) { return b; },
        [c](std::size_t, std::size_t) { return c; },
    };
}

Problem::Problem(Grid grid, CoefficientSet coeffs, double u0, OrderSpec order, OrderSampling sampling)
    : grid_(grid), coeffs_(std::move(coeffs)), u0_(u0), order_(order), sampling_(sampling) {
    if (!std::isfinite(u0_)) {
        throw DomainError("problem: initial value u0 must be finite");
    }
    if (!coeffs_.a || !coeffs_.b || !coeffs_.c) {
        throw DomainError("problem: coefficient functions must all be set");
    }
    if (auto violation = validate_on_grid(order_, grid_, sampling_)) {
        std::ostringstream out;
        out.precision(17);
        out << "problem: order " << violation->order << " at "
            << (order_.kind() == OrderKind::CurrentTime ? "time " : "lag ") << violation->argument
            << " is outside (0, 1)";
        throw DomainError(out.str());
    }
    if (auto broken = check_invariants(order_)) {
        throw DomainError("problem: " + *broken);
    }
    for (std::size_t k = 1; k <= grid_.nodes(); ++k) {
        if (!std::isfinite(a(k)) || !std::isfinite(b(k)) || !std::isfinite(c(k))) {
            throw DomainError("problem: non-finite coefficient at node " + std::to_string(k));
        }
    }
}

Problem ProblemTemplate::instantiate(std::size_t nodes, OrderKind kind) const {
    return Problem(Grid(horizon, nodes), coeffs, u0, order.with_kind(kind), sampling);
}

double kernel_eval(KernelVariant variant, const OrderSpec& spec, double t, double tau) {
    if (!(tau >= 0.0) || !(tau < t)) {
        throw DomainError("kernel: requires 0 <= tau < t");
    }
    const double lag = t - tau;
    const double q = eval_order(spec, variant == KernelVariant::AlphaOfT ? t : lag);
    return std::pow(lag, -q) / gamma(1.0 - q);
}

}  // namespace memriccati
