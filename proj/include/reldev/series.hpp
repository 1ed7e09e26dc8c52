#pragma once

#include <vector>

namespace reldev {

// Observations X_1..X_n at implicit design points i/n. Values must be finite.
struct TimeSeries {
    std::vector<double> values;

    TimeSeries() = default;
    explicit TimeSeries(std::vector<double> v);

    int n() const { return static_cast<int>(values.size()); }
    // Design point of the 0-based observation index.
    double design_point(int i) const { return double(i + 1) / double(n()); }
};

// Estimation entry points reject series shorter than this.
inline constexpr int kMinSeriesLength = 20;

void require_estimable(const TimeSeries& series);

}  // namespace reldev
