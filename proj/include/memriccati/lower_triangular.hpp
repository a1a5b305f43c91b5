#pragma once

#include <cstddef>
#include <vector>

namespace memriccati {

/// Square lower-triangular matrix in packed row-major storage. Entries above
/// the diagonal are structurally zero and never stored. Indices are 0-based.
class LowerTriangularMatrix {
public:
    LowerTriangularMatrix() = default;
    explicit LowerTriangularMatrix(std::size_t size)
        : size_(size), packed_(size * (size + 1) / 2, 0.0) {}

    std::size_t size() const noexcept { return size_; }

    double& operator()(std::size_t row, std::size_t col) noexcept {
        return packed_[row * (row + 1) / 2 + col];
    }
    double operator()(std::size_t row, std::size_t col) const noexcept {
        return packed_[row * (row + 1) / 2 + col];
    }

    /// Value at (row, col); zero above the diagonal.
    double at(std::size_t row, std::size_t col) const noexcept {
        return col > row ? 0.0 : (*this)(row, col);
    }

    /// Pointer to the first stored entry of `row` (row + 1 entries follow).
    const double* row_data(std::size_t row) const noexcept {
        return packed_.data() + row * (row + 1) / 2;
    }
    double* row_data(std::size_t row) noexcept { return packed_.data() + row * (row + 1) / 2; }

private:
    std::size_t size_ = 0;
    std::vector<double> packed_;
};

}  // namespace memriccati
