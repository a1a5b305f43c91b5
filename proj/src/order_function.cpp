#include "memriccati/order_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memriccati/errors.hpp"

namespace memriccati {

namespace {

double raw_order(const OrderForm& form, double arg) {
    if (const auto* c = std::get_if<ConstantOrder>(&form)) {
        return c->value;
    }
    const auto& p = std::get<PeriodicOrder>(form);
    return (p.theta * std::cos(p.mu * arg) + 2.0 * p.delta) / 2.0;
}

bool inside_open_unit(double v) { return v > 0.0 && v < 1.0; }

}  // namespace

OrderSpec OrderSpec::constant(OrderKind kind, double value) {
    return OrderSpec(kind, ConstantOrder{value});
}

OrderSpec OrderSpec::periodic(OrderKind kind, double delta, double theta, double mu) {
    return OrderSpec(kind, PeriodicOrder{delta, theta, mu});
}

OrderSpec OrderSpec::with_kind(OrderKind kind) const {
    OrderSpec copy = *this;
    copy.kind_ = kind;
    return copy;
}

OrderSpec OrderSpec::with_clamp(double margin) const {
    if (!(margin >= 0.0 && margin < 0.5)) {
        throw DomainError("order: clamp margin must lie in [0, 0.5)");
    }
    OrderSpec copy = *this;
    copy.clamp_margin_ = margin;
    return copy;
}

double OrderSpec::lower_bound() const noexcept {
    if (const auto* c = std::get_if<ConstantOrder>(&form_)) {
        return c->value;
    }
    const auto& p = std::get<PeriodicOrder>(form_);
    return (2.0 * p.delta - std::abs(p.theta)) / 2.0;
}

double OrderSpec::upper_bound() const noexcept {
    if (const auto* c = std::get_if<ConstantOrder>(&form_)) {
        return c->value;
    }
    const auto& p = std::get<PeriodicOrder>(form_);
    return (2.0 * p.delta + std::abs(p.theta)) / 2.0;
}

std::optional<std::string> check_invariants(const OrderSpec& spec) {
    std::ostringstream out;
    if (const auto* p = std::get_if<PeriodicOrder>(&spec.form())) {
        if (!std::isfinite(p->delta) || !std::isfinite(p->theta) || !std::isfinite(p->mu)) {
            return "periodic order parameters must be finite";
        }
    }
    const double lo = spec.lower_bound();
    const double hi = spec.upper_bound();
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        return "order value must be finite";
    }
    if (spec.clamp_margin() > 0.0) {
        if (lo < 0.0 || hi > 1.0) {
            out << "order range [" << lo << ", " << hi << "] leaves [0, 1]";
            return out.str();
        }
        return std::nullopt;
    }
    if (!(lo > 0.0) || !(hi < 1.0)) {
        out << "order range [" << lo << ", " << hi << "] is not inside (0, 1)";
        return out.str();
    }
    return std::nullopt;
}

double eval_order(const OrderSpec& spec, double arg) {
    if (!(arg >= 0.0)) {
        throw DomainError("order: argument must be non-negative");
    }
    double value = raw_order(spec.form(), arg);
    if (const double m = spec.clamp_margin(); m > 0.0) {
        value = std::clamp(value, m, 1.0 - m);
    }
    if (!inside_open_unit(value)) {
        std::ostringstream out;
        out.precision(17);
        out << "order: value " << value << " at argument " << arg << " is outside (0, 1)";
        throw DomainError(out.str());
    }
    return value;
}

double order_argument(OrderArgument reading, double x, double h) noexcept {
    return reading == OrderArgument::Literal ? h * x : x;
}

double sampled_lag(LagSampling sampling, std::size_t i, double h) noexcept {
    const double offset = sampling == LagSampling::Midpoint ? 0.5 : 1.0;
    return (static_cast<double>(i) - offset) * h;
}

std::optional<OrderViolation> validate_on_grid(const OrderSpec& spec, const Grid& grid,
                                               const OrderSampling& sampling) {
    const double h = grid.step();
    for (std::size_t k = 1; k <= grid.nodes(); ++k) {
        const double x = spec.kind() == OrderKind::CurrentTime ? grid.time(k)
                                                               : sampled_lag(sampling.lag, k, h);
        double value = raw_order(spec.form(), order_argument(sampling.argument, x, h));
        if (const double m = spec.clamp_margin(); m > 0.0) {
            value = std::clamp(value, m, 1.0 - m);
        }
        if (!inside_open_unit(value)) {
            return OrderViolation{x, value};
        }
    }
    return std::nullopt;
}

}  // namespace memriccati
