#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "memriccati/errors.hpp"
#include "memriccati/order_function.hpp"

using namespace memriccati;

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

TEST_CASE("eval_order: periodic closed forms") {
    const auto spec = OrderSpec::periodic(OrderKind::LagTime, 0.5, 0.5, kHalfPi);
    CHECK(eval_order(spec, 0.0) == doctest::Approx(0.75).epsilon(1e-15));

    const auto flat = OrderSpec::periodic(OrderKind::CurrentTime, 0.5, 0.0, 123.0);
    CHECK(eval_order(flat, 7.3) == 0.5);

    CHECK(eval_order(OrderSpec::constant(OrderKind::CurrentTime, 0.9999), 42.0) == 0.9999);
}

TEST_CASE("eval_order: boundary of the lower bound is rejected") {
    const auto spec = OrderSpec::periodic(OrderKind::LagTime, 0.25, 0.5, kHalfPi);
    REQUIRE(check_invariants(spec).has_value());
    CHECK_THROWS_AS(eval_order(spec, 2.0), DomainError);
    CHECK_THROWS_AS(eval_order(spec, -1.0), DomainError);
}

TEST_CASE("check_invariants") {
    CHECK_FALSE(check_invariants(OrderSpec::constant(OrderKind::CurrentTime, 0.5)).has_value());
    CHECK(check_invariants(OrderSpec::constant(OrderKind::CurrentTime, 1.0)).has_value());
    CHECK(check_invariants(OrderSpec::constant(OrderKind::CurrentTime, 0.0)).has_value());
    CHECK_FALSE(check_invariants(OrderSpec::periodic(OrderKind::CurrentTime, 0.5, 0.5, kHalfPi)).has_value());
    // upper bound touches 1 without a clamp
    CHECK(check_invariants(OrderSpec::periodic(OrderKind::CurrentTime, 0.75, 0.5, kHalfPi)).has_value());

    SUBCASE("clamp relaxes endpoints to the closed interval") {
        const auto top = OrderSpec::periodic(OrderKind::CurrentTime, 0.75, 0.5, kHalfPi).with_clamp(1e-9);
        CHECK_FALSE(check_invariants(top).has_value());
        CHECK(eval_order(top, 0.0) == 1.0 - 1e-9);
        const auto bottom = OrderSpec::periodic(OrderKind::LagTime, 0.25, 0.5, kHalfPi).with_clamp(1e-9);
        CHECK(eval_order(bottom, 2.0) == 1e-9);
        const auto beyond = OrderSpec::periodic(OrderKind::LagTime, 0.1, 0.5, 1.0).with_clamp(1e-9);
        CHECK(check_invariants(beyond).has_value());
    }
}

TEST_CASE("validate_on_grid") {
    SUBCASE("constant order passes") {
        CHECK_FALSE(validate_on_grid(OrderSpec::constant(OrderKind::LagTime, 0.9999), Grid(50.0, 2000)));
    }
    SUBCASE("clamped example-2 parameters pass on the coarse grid") {
        const auto spec = OrderSpec::periodic(OrderKind::CurrentTime, 0.75, 0.5, kHalfPi).with_clamp(1e-9);
        CHECK_FALSE(validate_on_grid(spec, Grid(50.0, 129)));
        CHECK_FALSE(validate_on_grid(spec.with_kind(OrderKind::LagTime), Grid(50.0, 129)));
    }
    SUBCASE("negative minimum is reported at the first offending argument") {
        const auto spec = OrderSpec::periodic(OrderKind::CurrentTime, 0.1, 0.5, 1.0);
        const Grid grid(50.0, 500);
        const auto violation = validate_on_grid(spec, grid);
        REQUIRE(violation.has_value());
        CHECK(violation->order <= 0.0);
        // order <= 0 first happens where cos(t) <= -0.4
        CHECK(std::cos(violation->argument) <= -0.4);
        CHECK(std::cos(violation->argument - grid.step()) > -0.4);
    }
    SUBCASE("lag kind samples lags starting at zero") {
        const auto spec = OrderSpec::periodic(OrderKind::LagTime, 0.75, 0.5, kHalfPi);
        const auto violation = validate_on_grid(spec, Grid(10.0, 10));
        REQUIRE(violation.has_value());
        CHECK(violation->argument == 0.0);
        CHECK(violation->order == 1.0);
    }
}

TEST_CASE("periodic order: periodicity and range") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> arg(0.0, 100.0);
    const double delta = 0.5, theta = 0.5, mu = 1.3;
    const auto spec = OrderSpec::periodic(OrderKind::CurrentTime, delta, theta, mu);
    const double period = 2.0 * std::numbers::pi / mu;
    for (int i = 0; i < 100; ++i) {
        const double x = arg(rng);
        REQUIRE(std::abs(eval_order(spec, x) - eval_order(spec, x + period)) <= 1e-12);
    }
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double v = eval_order(spec, arg(rng));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= (2 * delta - theta) / 2);
    CHECK(hi <= (2 * delta + theta) / 2);
}

TEST_CASE("order argument readings") {
    CHECK(order_argument(OrderArgument::Physical, 3.0, 0.5) == 3.0);
    CHECK(order_argument(OrderArgument::Literal, 3.0, 0.5) == 1.5);
    CHECK(sampled_lag(LagSampling::LeftEdge, 1, 0.25) == 0.0);
    CHECK(sampled_lag(LagSampling::Midpoint, 1, 0.25) == 0.125);
    CHECK(sampled_lag(LagSampling::LeftEdge, 3, 0.25) == 0.5);
}
