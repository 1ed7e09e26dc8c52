#pragma once

#include <string>
#include <vector>

#include "reldev/deviation.hpp"
#include "reldev/kernels.hpp"

namespace reldev {

// Estimated first time at which |d| reaches delta - delta_n; infinity when the
// deviation never gets that close to the margin.
struct FirstExceedance {
    double t_star_hat = 0.0;
    double delta_n = 0.0;
    double threshold_used = 0.0;  // delta - delta_n
    bool detected() const;
};

// First crossing of delta - delta_n by the running maximum of |d|, refined by
// linear interpolation inside the crossing cell. Throws invalid_margin unless
// 0 < delta_n < delta.
FirstExceedance first_exceedance(const DeviationCurve& dev, double delta, double delta_n);

// Margin c * sigma_hat ||K*|| ell / sqrt(nh); warns at the boundary c = 1 and
// rejects c < 1. `measure` feeds the scaling sequence (default: unit interval).
double default_delta_n(double sigma_hat, const KernelSpec& k, int n, double h, double c = 2.0,
                       double measure = 1.0, std::vector<std::string>* warnings = nullptr);

}  // namespace reldev
