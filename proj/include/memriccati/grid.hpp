#pragma once

#include <cstddef>
#include <vector>

namespace memriccati {

/// Uniform grid on [0, T] with N steps. Unknowns live at t_1..t_N; t_0 = 0
/// carries the initial value.
class Grid {
public:
    /// Throws DomainError unless T > 0 (finite) and N >= 1.
    Grid(double horizon, std::size_t nodes);

    double horizon() const noexcept { return horizon_; }
    std::size_t nodes() const noexcept { return nodes_; }
    double step() const noexcept { return step_; }

    /// t_k = k·h for k = 0..N.
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * step_; }

    /// t_1..t_N.
    std::vector<double> node_times() const;

private:
    double horizon_;
    std::size_t nodes_;
    double step_;
};

}  // namespace memriccati
