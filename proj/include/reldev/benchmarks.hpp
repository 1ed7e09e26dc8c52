#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "reldev/kernels.hpp"
#include "reldev/series.hpp"

namespace reldev {

// Scalar benchmark g against which deviations of the mean curve are measured.
struct BenchmarkSpec {
    enum class Kind { initial_value, partial_mean, full_mean, constant };

    Kind kind = Kind::full_mean;
    double x0 = 0.0;    // partial_mean: right end of the reference window
    double value = 0.0; // constant: the target

    // "initial" | "partial-mean:<x0>" | "full-mean" | "constant:<c>"
    static BenchmarkSpec parse(std::string_view text);
    std::string str() const;
};

// Estimates the benchmark:
//   initial_value -> jackknife fit at t = 0 with bandwidth h*log(h)^2
//                    (clamped at 0.49, natural log), boundary fit allowed
//   partial_mean  -> mean of the first floor(x0*n) observations
//   full_mean     -> sample mean
//   constant      -> the target itself
double estimate_benchmark(const BenchmarkSpec& spec, const TimeSeries& series,
                          const KernelSpec& k, double h,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace reldev
