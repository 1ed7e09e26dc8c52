#pragma once

#include <span>

#include "reldev/series.hpp"

namespace reldev {

struct LrvEstimate {
    double sigma2 = 0.0;
    int block_length = 1;
};

// Long-run variance from differences of adjacent non-overlapping block sums
// of length m. Apply to the raw observations: the differencing cancels a
// slowly varying mean. Throws block_too_large unless floor(n/m) >= 2.
LrvEstimate lrv_estimate(const TimeSeries& series, int m);

// Data-driven block length from the first four empirical autocovariances of
// the residuals (biased, divide-by-n). Always >= 1.
int block_length_rule(std::span<const double> residuals);

// Baseline block length floor(n^(1/3)) when no residuals are available.
int default_block_length(int n);

}  // namespace reldev
