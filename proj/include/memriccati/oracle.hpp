#pragma once

#include <cstddef>
#include <functional>

#include "memriccati/grid.hpp"
#include "memriccati/problem.hpp"

namespace memriccati::oracle {

/// a(t), b(t), c(t) in continuous time.
struct ContinuousCoefficients {
    std::function<double(double)> a;
    std::function<double(double)> b;
    std::function<double(double)> c;
};

/// a(t) = −t/T, b = 0, c(t) = t/T: the continuum limit of the ramp, since k/N = t_k/T.
ContinuousCoefficients ramp_continuous(double horizon);

ContinuousCoefficients constant_continuous(double a, double b, double c);

/// Classical RK4 for u' = −(a(t)u² + b(t)u + c(t)), u(0) = u0, with `steps`
/// equal steps over [0, T]. Returns the values at t_1..t_steps.
SolutionSeries rk4_classic(const ContinuousCoefficients& coeffs, double u0, double horizon, std::size_t steps);

/// rk4_classic with `refine`·N steps, sampled back onto the nodes of `grid`.
SolutionSeries rk4_on_grid(const ContinuousCoefficients& coeffs, double u0, const Grid& grid,
                           std::size_t refine = 10);

/// Solves the difference scheme one node at a time: scalar Newton on f_k with
/// u_1..u_{k−1} frozen, started from u_{k−1}, stopped once |Δu_k| <= eps.
///
/// Throws NonConvergence naming the node when a scalar solve stalls.
SolutionSeries sequential_march(const Problem& problem, double eps, std::size_t max_iterations = 100);

}  // namespace memriccati::oracle
