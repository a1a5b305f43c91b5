#pragma once

#include <optional>
#include <string>
#include <variant>

#include "memriccati/grid.hpp"

namespace memriccati {

/// Which argument the order function receives: the current time t (α(t)) or
/// the lag t − τ (γ(t − τ)).
enum class OrderKind { CurrentTime, LagTime };

struct ConstantOrder {
    double value;
};

/// order(x) = (θ·cos(μ·x) + 2δ) / 2
struct PeriodicOrder {
    double delta;
    double theta;
    double mu;
};

using OrderForm = std::variant<ConstantOrder, PeriodicOrder>;

/// How the discretization feeds arguments to a periodic order.
enum class OrderArgument {
    Physical,  ///< cos(μ·x) with x in time units
    Literal,   ///< cos(μ·h·x): grid step kept inside the cosine
};

/// Where the lag order is sampled inside the i-th memory sub-interval.
enum class LagSampling {
    LeftEdge,  ///< lag = (i − 1)·h
    Midpoint,  ///< lag = (i − 1/2)·h
};

struct OrderSampling {
    OrderArgument argument = OrderArgument::Physical;
    LagSampling lag = LagSampling::LeftEdge;
};

/// Fractional order α(t) or γ(t − τ), always inside (0, 1).
///
/// A non-zero clamp margin pins evaluated orders into [margin, 1 − margin]
/// and relaxes the range invariant to the closed interval [0, 1]. Presets
/// whose closed-form range touches an endpoint use it.
class OrderSpec {
public:
    static OrderSpec constant(OrderKind kind, double value);
    static OrderSpec periodic(OrderKind kind, double delta, double theta, double mu);

    OrderSpec with_kind(OrderKind kind) const;
    OrderSpec with_clamp(double margin) const;

    OrderKind kind() const noexcept { return kind_; }
    const OrderForm& form() const noexcept { return form_; }
    double clamp_margin() const noexcept { return clamp_margin_; }
    bool is_constant() const noexcept { return std::holds_alternative<ConstantOrder>(form_); }

    /// Closed-form minimum / maximum of the unclamped order over all arguments.
    double lower_bound() const noexcept;
    double upper_bound() const noexcept;

private:
    OrderSpec(OrderKind kind, OrderForm form) : kind_(kind), form_(form) {}

    OrderKind kind_;
    OrderForm form_;
    double clamp_margin_ = 0.0;
};

/// Describes the first broken invariant, or nullopt when the spec is usable.
std::optional<std::string> check_invariants(const OrderSpec& spec);

/// Throws DomainError for arg < 0 or when the result leaves (0, 1).
double eval_order(const OrderSpec& spec, double arg);

struct OrderViolation {
    double argument;
    double order;
};

/// Evaluates the order at every argument the discretization will use on
/// `grid` (times t_1..t_N, or lags of each memory sub-interval) and returns
/// the first one whose value is not inside (0, 1).
std::optional<OrderViolation> validate_on_grid(const OrderSpec& spec, const Grid& grid,
                                               const OrderSampling& sampling = {});

/// Argument handed to eval_order for time/lag `x` on a grid with step `h`.
double order_argument(OrderArgument reading, double x, double h) noexcept;

/// Lag at which the i-th (1-based) memory weight samples the order.
double sampled_lag(LagSampling sampling, std::size_t i, double h) noexcept;

}  // namespace memriccati
