#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace memriccati {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A diagonal entry or Gauss-Jordan pivot of the Newton Jacobian fell below
/// the configured singular tolerance.
class SingularJacobian : public std::runtime_error {
public:
    SingularJacobian(const std::string& what, std::size_t index)
        : std::runtime_error(what), index_(index) {}

    /// 1-based row of the offending pivot.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Newton iteration exhausted its budget.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, std::size_t iterations, double last_step_norm)
        : std::runtime_error(what), iterations_(iterations), last_step_norm_(last_step_norm) {}

    std::size_t iterations() const noexcept { return iterations_; }
    double last_step_norm() const noexcept { return last_step_norm_; }

private:
    std::size_t iterations_;
    double last_step_norm_;
};

}  // namespace memriccati
