#include "reldev/benchmarks.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "reldev/errors.hpp"
#include "reldev/smoothing.hpp"

namespace reldev {
namespace {

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("cannot parse " + std::string(what) + " from '" +
                                    std::string(text) + "'");
    return value;
}

}  // namespace

BenchmarkSpec BenchmarkSpec::parse(std::string_view text) {
    BenchmarkSpec spec;
    if (text == "initial") {
        spec.kind = Kind::initial_value;
        return spec;
    }
    if (text == "full-mean") {
        spec.kind = Kind::full_mean;
        return spec;
    }
    if (text.rfind("partial-mean:", 0) == 0) {
        spec.kind = Kind::partial_mean;
        spec.x0 = parse_number(text.substr(13), "partial-mean fraction");
        if (!(spec.x0 > 0.0 && spec.x0 < 1.0))
            throw std::invalid_argument("partial-mean fraction must lie in (0,1)");
        return spec;
    }
    if (text.rfind("constant:", 0) == 0) {
        spec.kind = Kind::constant;
        spec.value = parse_number(text.substr(9), "constant benchmark");
        if (!std::isfinite(spec.value))
            throw std::invalid_argument("constant benchmark must be finite");
        return spec;
    }
    throw std::invalid_argument("unknown benchmark '" + std::string(text) +
                                "' (expected initial | partial-mean:<x0> | full-mean | constant:<c>)");
}

std::string BenchmarkSpec::str() const {
    switch (kind) {
        case Kind::initial_value: return "initial";
        case Kind::partial_mean: return "partial-mean:" + std::to_string(x0);
        case Kind::full_mean: return "full-mean";
        case Kind::constant: return "constant:" + std::to_string(value);
    }
    return "?";
}

double estimate_benchmark(const BenchmarkSpec& spec, const TimeSeries& series,
                          const KernelSpec& k, double h, std::vector<std::string>* warnings) {
    switch (spec.kind) {
        case BenchmarkSpec::Kind::constant:
            return spec.value;
        case BenchmarkSpec::Kind::full_mean: {
            require_estimable(series);
            return std::accumulate(series.values.begin(), series.values.end(), 0.0) /
                   double(series.n());
        }
        case BenchmarkSpec::Kind::partial_mean: {
            require_estimable(series);
            const int count =
                static_cast<int>(std::floor(spec.x0 * series.n() + 1e-9));
            if (count < 1)
                throw std::invalid_argument("partial-mean window contains no observation");
            return std::accumulate(series.values.begin(), series.values.begin() + count, 0.0) /
                   double(count);
        }
        case BenchmarkSpec::Kind::initial_value: {
            require_estimable(series);
            if (!(h > 0.0) || h >= 1.0)
                throw std::invalid_argument("initial-value benchmark needs h in (0,1)");
            const double lg = std::log(h);
            double inflated = h * lg * lg;
            if (inflated >= 0.5) {
                if (warnings)
                    warnings->push_back("initial-value bandwidth h*log(h)^2 = " +
                                        std::to_string(inflated) + " clamped to 0.49");
                inflated = 0.49;
            }
            const double rate = series.n() * std::pow(h, 7) * std::pow(std::abs(lg), 12);
            if (rate > 1.0 && warnings)
                warnings->push_back("initial-value benchmark rate check n*h^7*|log h|^12 = " +
                                    std::to_string(rate) + " exceeds 1");
            const std::vector<double> at_zero{0.0};
            return jackknife_values(series, k, inflated, at_zero, exec::seq)[0];
        }
    }
    throw std::invalid_argument("unhandled benchmark kind");
}

}  // namespace reldev
