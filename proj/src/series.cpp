#include "reldev/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "reldev/errors.hpp"

namespace reldev {

TimeSeries::TimeSeries(std::vector<double> v) : values(std::move(v)) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("non-finite observation at index " + std::to_string(i));
    }
}

void require_estimable(const TimeSeries& series) {
    if (series.n() < kMinSeriesLength)
        throw too_few_observations(static_cast<std::size_t>(series.n()), kMinSeriesLength);
}

}  // namespace reldev
