#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "memriccati/errors.hpp"
#include "memriccati/newton_solver.hpp"
#include "memriccati/oracle.hpp"

using namespace memriccati;

namespace {

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

std::vector<double> multiply(const LowerTriangularMatrix& j, const std::vector<double>& x) {
    std::vector<double> y(j.size(), 0.0);
    for (std::size_t r = 0; r < j.size(); ++r)
        for (std::size_t c = 0; c <= r; ++c) y[r] += j(r, c) * x[c];
    return y;
}

}  // namespace

TEST_CASE("solve_linear: identity and a hand-solved 2x2") {
    LowerTriangularMatrix eye(3);
    for (std::size_t i = 0; i < 3; ++i) eye(i, i) = 1.0;
    const std::vector<double> f{1.5, -2.0, 7.0};
    for (auto backend : {LinearBackend::TriangularSubstitution, LinearBackend::GaussJordan}) {
        CHECK(solve_linear(eye, f, backend) == f);
    }

    LowerTriangularMatrix j(2);
    j(0, 0) = 2.0;
    j(1, 0) = -1.0;
    j(1, 1) = 3.0;
    const std::vector<double> rhs{4.0, 1.0};
    for (auto backend : {LinearBackend::TriangularSubstitution, LinearBackend::GaussJordan}) {
        const auto x = solve_linear(j, rhs, backend);
        CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));
        const auto back = multiply(j, x);
        CHECK(back[0] == doctest::Approx(4.0));
        CHECK(back[1] == doctest::Approx(1.0));
    }
}

TEST_CASE("solve_linear: backends agree on random well-conditioned systems") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 40;
        LowerTriangularMatrix j(n);
        std::vector<double> f(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < r; ++c) j(r, c) = d(rng) / static_cast<double>(n);
            j(r, r) = 1.0 + std::abs(d(rng));
            f[r] = d(rng);
        }
        const auto xt = solve_linear(j, f, LinearBackend::TriangularSubstitution);
        const auto xg = solve_linear(j, f, LinearBackend::GaussJordan);
        double scale = 0.0, fmax = 0.0, resid = 0.0;
        for (double x : xt) scale = std::max(scale, std::abs(x));
        REQUIRE(max_abs_diff(xt, xg) <= 1e-9 * scale);
        const auto back = multiply(j, xt);
        for (std::size_t r = 0; r < n; ++r) {
            fmax = std::max(fmax, std::abs(f[r]));
            resid = std::max(resid, std::abs(back[r] - f[r]));
        }
        REQUIRE(resid <= 1e-9 * fmax);
    }
}

TEST_CASE("solve_linear: singular diagonal or pivot") {
    LowerTriangularMatrix j(3);
    j(0, 0) = 1.0;
    j(1, 0) = 2.0;
    j(1, 1) = 0.0;
    j(2, 2) = 1.0;
    const std::vector<double> f{1.0, 1.0, 1.0};
    try {
        solve_linear(j, f, LinearBackend::TriangularSubstitution);
        FAIL("expected SingularJacobian");
    } catch (const SingularJacobian& e) {
        CHECK(e.index() == 2);
    }
    CHECK_THROWS_AS(solve_linear(j, f, LinearBackend::GaussJordan), SingularJacobian);
    CHECK_THROWS_AS(solve_linear(j, std::vector<double>{1.0}, LinearBackend::GaussJordan), DomainError);
}

TEST_CASE("newton: backward-Euler single node picks the root 1 - sqrt(2)") {
    const Problem p(Grid(0.5, 1), constant_coefficients(-1, 0, 1), 0.0,
                    OrderSpec::constant(OrderKind::CurrentTime, 1.0 - 1e-12));
    const auto out = solve(p);
    CHECK(out.converged);
    CHECK(out.solution.values.at(0) == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-6));
    CHECK(out.last_step_norm <= 1e-4);
}

TEST_CASE("newton: zero coefficients keep the initial value") {
    for (auto kind : {OrderKind::CurrentTime, OrderKind::LagTime}) {
        const Problem p(Grid(50.0, 10), constant_coefficients(0, 0, 0), 3.0,
                        OrderSpec::periodic(kind, 0.5, 0.3, 1.0));
        const auto out = solve(p);
        CHECK(out.iterations <= 2);
        for (double v : out.solution.values) CHECK(v == 3.0);
        CHECK(out.solution.final_residual_norm == 0.0);
    }
}

TEST_CASE("newton: example-1 saturates towards -1") {
    const Problem p(Grid(50.0, 2000), ramp_coefficients(), 0.0, OrderSpec::constant(OrderKind::CurrentTime, 0.9999));
    const auto out = solve(p);
    const auto& u = out.solution.values;
    REQUIRE(u.size() == 2000);
    for (std::size_t k = 1; k < u.size(); ++k) REQUIRE(u[k] <= u[k - 1] + 1e-12);
    CHECK(std::abs(u.back() + 1.0) <= 0.05);
    const auto classic = oracle::rk4_on_grid(oracle::ramp_continuous(50.0), 0.0, Grid(50.0, 2000));
    CHECK(std::abs(classic.values.back() - u.back()) <= 0.05);
}

TEST_CASE("newton: settings are validated and the budget is enforced") {
    const Problem p(Grid(50.0, 200), ramp_coefficients(), 0.0, OrderSpec::constant(OrderKind::CurrentTime, 0.5));
    NewtonSettings bad;
    bad.eps = 0.0;
    CHECK_THROWS_AS(solve(p, bad), DomainError);
    NewtonSettings tight;
    tight.max_iterations = 1;
    tight.initial_guess = InitialGuess::ConstantU0;
    CHECK_THROWS_AS(solve(p, tight), NonConvergence);
}

TEST_CASE("newton: marched initial guess stays on the continued branch") {
    // lag order dips towards 0 periodically; the constant guess converges onto another root branch
    const Problem p(Grid(50.0, 64), ramp_coefficients(), 0.0,
                    OrderSpec::periodic(OrderKind::LagTime, 0.25, 0.5, std::numbers::pi / 2).with_clamp(1e-9));
    const auto out = solve(p);
    const auto march = oracle::sequential_march(p, 1e-4);
    CHECK(max_abs_diff(out.solution.values, march.values) <= 1e-3);

    NewtonSettings constant;
    constant.initial_guess = InitialGuess::ConstantU0;
    CHECK_THROWS_AS(solve(p, constant), NonConvergence);

    const Discretization scheme(p);
    const auto flat = initial_iterate(scheme, InitialGuess::ConstantU0);
    CHECK(flat == std::vector<double>(64, 0.0));
}

TEST_CASE("newton: outcome invariants and determinism") {
    const Problem p(Grid(50.0, 129), ramp_coefficients(), 0.0,
                    OrderSpec::periodic(OrderKind::LagTime, 0.5, 0.5, std::numbers::pi / 2));
    const auto first = solve(p);
    const auto second = solve(p);
    CHECK(first.converged);
    CHECK(first.last_step_norm <= 1e-4);
    CHECK(first.solution.values == second.solution.values);
    CHECK(first.solution.final_residual_norm <= 10 * 1e-4);

    NewtonSettings gj;
    gj.linear_backend = LinearBackend::GaussJordan;
    const auto viaGJ = solve(p, gj);
    CHECK(max_abs_diff(first.solution.values, viaGJ.solution.values) <= 1e-8);
}
