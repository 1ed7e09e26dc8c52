#include "reldev/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reldev/errors.hpp"

namespace reldev {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string_view last_field(std::string_view line) {
    const auto pos = line.find_last_of(",;\t ");
    return trim(pos == std::string_view::npos ? line : line.substr(pos + 1));
}

bool parse_value(std::string_view field, double* out) {
    if (field.empty()) return false;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), *out);
    return res.ec == std::errc{} && res.ptr == field.data() + field.size() &&
           std::isfinite(*out);
}

}  // namespace

TimeSeries ingest_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");

    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view content = trim(line);
        if (content.empty()) continue;
        double v = 0.0;
        if (parse_value(last_field(content), &v)) {
            values.push_back(v);
            seen_data = true;
        } else if (!seen_data && values.empty() && line_no == 1) {
            continue;  // header row
        } else {
            throw parse_error(line_no, "cannot parse value from '" + std::string(content) + "'");
        }
    }
    if (values.size() < static_cast<std::size_t>(kMinSeriesLength))
        throw too_few_observations(values.size(), kMinSeriesLength);
    return TimeSeries(std::move(values));
}

}  // namespace reldev
