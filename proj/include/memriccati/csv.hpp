#pragma once

#include <filesystem>
#include <string>

#include "memriccati/convergence.hpp"
#include "memriccati/problem.hpp"

namespace memriccati::csv {

/// 17 significant digits with a '.' decimal point; parses back to the same double.
std::string format_real(double value);

/// Header `t,u`, one row per node. LF line endings.
std::string solution_to_csv(const SolutionSeries& series);

/// Header `N,h,eps_alpha,p_alpha,eps_gamma,p_gamma`; absent values are empty fields.
std::string report_to_csv(const ConvergenceReport& report);

/// Inverse of solution_to_csv. Throws std::runtime_error on malformed input.
SolutionSeries parse_solution(const std::string& text);

/// Inverse of report_to_csv. Throws std::runtime_error on malformed input.
ConvergenceReport parse_report(const std::string& text);

/// Writes `contents` to `path`; throws std::ios_base::failure on I/O errors.
void write_file(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace memriccati::csv
