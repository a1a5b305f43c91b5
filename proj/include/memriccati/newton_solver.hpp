#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "memriccati/discretization.hpp"
#include "memriccati/lower_triangular.hpp"
#include "memriccati/problem.hpp"

namespace memriccati {

enum class LinearBackend {
    TriangularSubstitution,  ///< forward substitution, O(N²)
    GaussJordan,             ///< explicit inverse by Gauss-Jordan elimination, O(N³)
};

/// Starting iterate U_0 of the global Newton iteration.
enum class InitialGuess {
    /// Marches once through the nodes, taking a single linearized Newton step
    /// for u_k from u_{k−1} with the already-predicted history. Keeps every
    /// node on the root branch continued from u0.
    LinearizedMarch,
    /// U_0 = (u0, …, u0).
    ConstantU0,
};

struct NewtonSettings {
    /// Iteration stops once ‖U_{m+1} − U_m‖_∞ <= eps.
    double eps = 1e-4;
    std::size_t max_iterations = 100;
    /// Step norm before the first iteration; 10³·eps when unset.
    std::optional<double> initial_residual;
    LinearBackend linear_backend = LinearBackend::TriangularSubstitution;
    InitialGuess initial_guess = InitialGuess::LinearizedMarch;
    /// Smallest admissible |diagonal| or |pivot|.
    double singular_tolerance = 1e-14;
};

struct NewtonOutcome {
    SolutionSeries solution;
    std::size_t iterations = 0;
    bool converged = false;
    double last_step_norm = 0.0;
};

/// Solves J·Δ = F for a lower-triangular J.
///
/// Throws SingularJacobian when a diagonal entry (TriangularSubstitution) or
/// a pivot (GaussJordan) has magnitude below `singular_tolerance`.
std::vector<double> solve_linear(const LowerTriangularMatrix& jac, std::span<const double> rhs,
                                 LinearBackend backend, double singular_tolerance = 1e-14);

/// Starting iterate for `scheme` under the chosen strategy.
std::vector<double> initial_iterate(const Discretization& scheme, InitialGuess guess, double singular_tolerance = 1e-14);

/// Newton-Raphson on the full system F(U) = 0:
///   U_{m+1} = U_m − J(U_m)⁻¹ F(U_m), until ‖U_{m+1} − U_m‖_∞ <= eps.
///
/// Throws NonConvergence when max_iterations is exhausted, SingularJacobian
/// when the linear step cannot be formed, and DomainError for bad settings.
NewtonOutcome solve(const Problem& problem, const NewtonSettings& settings = {});

/// Same as solve() for a prebuilt discretization.
NewtonOutcome solve(const Discretization& scheme, const NewtonSettings& settings = {});

}  // namespace memriccati
