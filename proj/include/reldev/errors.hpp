#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reldev {

// Weighted design matrix of a local fit is numerically singular at t.
struct singular_design : std::runtime_error {
    double t;
    explicit singular_design(double t_)
        : std::runtime_error("singular local-linear design at t = " + std::to_string(t_)), t(t_) {}
};

struct quadrature_failure : std::runtime_error {
    explicit quadrature_failure(const std::string& what) : std::runtime_error(what) {}
};

struct block_too_large : std::runtime_error {
    explicit block_too_large(const std::string& what) : std::runtime_error(what) {}
};

struct no_valid_bandwidth : std::runtime_error {
    no_valid_bandwidth() : std::runtime_error("every candidate bandwidth produced a singular fit") {}
};

struct invalid_probability : std::runtime_error {
    explicit invalid_probability(double p)
        : std::runtime_error("probability outside (0,1): " + std::to_string(p)) {}
};

struct invalid_margin : std::runtime_error {
    explicit invalid_margin(const std::string& what) : std::runtime_error(what) {}
};

struct degenerate_variance : std::runtime_error {
    explicit degenerate_variance(const std::string& what) : std::runtime_error(what) {}
};

struct too_few_observations : std::runtime_error {
    explicit too_few_observations(std::size_t got, std::size_t need)
        : std::runtime_error("need at least " + std::to_string(need) + " observations, got " +
                             std::to_string(got)) {}
};

// CSV row that cannot be parsed; line is 1-based.
struct parse_error : std::runtime_error {
    std::size_t line;
    parse_error(std::size_t line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct invalid_config : std::runtime_error {
    explicit invalid_config(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reldev
