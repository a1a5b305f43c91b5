#include "memriccati/grid.hpp"

#include <cmath>
#include <string>

#include "memriccati/errors.hpp"

namespace memriccati {

Grid::Grid(double horizon, std::size_t nodes) : horizon_(horizon), nodes_(nodes), step_(0.0) {
    if (!std::isfinite(horizon) || horizon <= 0.0) {
        throw DomainError("grid: horizon T must be finite and positive, got " + std::to_string(horizon));
    }
    if (nodes == 0) {
        throw DomainError("grid: node count N must be at least 1");
    }
    step_ = horizon / static_cast<double>(nodes);
}

std::vector<double> Grid::node_times() const {
    std::vector<double> times(nodes_);
    for (std::size_t k = 1; k <= nodes_; ++k) {
        times[k - 1] = time(k);
    }
    return times;
}

}  // namespace memriccati
