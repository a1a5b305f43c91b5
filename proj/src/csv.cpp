#include "memriccati/csv.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace memriccati::csv {

namespace {

constexpr const char* kSolutionHeader = "t,u";
constexpr const char* kReportHeader = "N,h,eps_alpha,p_alpha,eps_gamma,p_gamma";

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_real(const std::string& field) {
    double value = 0.0;
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error("csv: malformed number '" + field + "'");
    }
    return value;
}

std::optional<double> parse_optional(const std::string& field) {
    if (field.empty()) return std::nullopt;
    return parse_real(field);
}

std::string optional_field(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::vector<std::string> body_lines(const std::string& text, const char* header) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header) {
        throw std::runtime_error(std::string("csv: expected header '") + header + "'");
    }
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc()) {
        throw std::runtime_error("csv: cannot format value");
    }
    return std::string(buf, ptr);
}

std::string solution_to_csv(const SolutionSeries& series) {
    std::string out = std::string(kSolutionHeader) + "\n";
    for (std::size_t k = 0; k < series.values.size(); ++k) {
        out += format_real(series.times.at(k));
        out += ',';
        out += format_real(series.values[k]);
        out += '\n';
    }
    return out;
}

std::string report_to_csv(const ConvergenceReport& report) {
    std::string out = std::string(kReportHeader) + "\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.nodes) + ',' + format_real(row.step) + ',' + optional_field(row.alpha.eps) +
               ',' + optional_field(row.alpha.p) + ',' + optional_field(row.gamma.eps) + ',' +
               optional_field(row.gamma.p) + '\n';
    }
    return out;
}

SolutionSeries parse_solution(const std::string& text) {
    SolutionSeries series;
    for (const auto& line : body_lines(text, kSolutionHeader)) {
        const auto fields = split_fields(line);
        if (fields.size() != 2) throw std::runtime_error("csv: solution row needs 2 fields: " + line);
        series.times.push_back(parse_real(fields[0]));
        series.values.push_back(parse_real(fields[1]));
    }
    return series;
}

ConvergenceReport parse_report(const std::string& text) {
    ConvergenceReport report;
    for (const auto& line : body_lines(text, kReportHeader)) {
        const auto fields = split_fields(line);
        if (fields.size() != 6) throw std::runtime_error("csv: report row needs 6 fields: " + line);
        ConvergenceRow row;
        std::size_t nodes = 0;
        auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), nodes);
        if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
            throw std::runtime_error("csv: malformed node count '" + fields[0] + "'");
        }
        row.nodes = nodes;
        row.step = parse_real(fields[1]);
        row.alpha = {parse_optional(fields[2]), parse_optional(fields[3])};
        row.gamma = {parse_optional(fields[4]), parse_optional(fields[5])};
        report.rows.push_back(row);
    }
    if (!report.rows.empty()) {
        report.horizon = report.rows.front().step * static_cast<double>(report.rows.front().nodes);
    }
    return report;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw std::ios_base::failure("failed writing " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace memriccati::csv
