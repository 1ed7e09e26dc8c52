#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reldev/deviation.hpp"
#include "reldev/kernels.hpp"
#include "reldev/parallel.hpp"
#include "reldev/series.hpp"
#include "reldev/testing.hpp"

namespace reldev {

// Time-varying long-run variance curve. Values are floored at kVarianceFloor
// (with `floored` set) and extended as constants on [0, m/n) and (1-m/n, 1].
struct LocalLrvCurve {
    std::vector<double> grid;
    std::vector<double> values;  // sigma^2(t), strictly positive
    double tau = 0.0;
    int m = 1;
    double boundary_lo = 0.0;
    double boundary_hi = 0.0;
    bool floored = false;
};

inline constexpr double kVarianceFloor = 1e-12;

// Kernel-weighted average of squared differences of adjacent length-m block
// sums, renormalized over the block positions that fit inside the sample.
LocalLrvCurve local_lrv_curve(const TimeSeries& series, const KernelSpec& k, double tau, int m,
                              std::span<const double> grid, exec policy = exec::par,
                              std::vector<std::string>* warnings = nullptr);

// Deviation of the noise-standardized curve: mu_tilde(t)/sigma_hat(t) - g_hat.
// Throws degenerate_variance if the variance curve was floored anywhere.
DeviationCurve standardized_deviation(const SmoothCurve& curve, const LocalLrvCurve& lrv,
                                      double g_hat);

// Test for the standardized deviation; the statistic is already on the noise
// scale, so no sigma factor enters the threshold. Supports the closed-form
// Gumbel variant and the simulated-quantile variant.
TestOutcome ls_test(const DeviationCurve& dev_sigma, const ExtremalSet& eset, const KernelSpec& k,
                    const TestConfig& cfg, exec policy = exec::par);

// Smoothing parameters (tau, m) for the variance curve derived from the
// bandwidth in force: m = round(sqrt(|log h|) log(n) sqrt(nh)) floored at 2,
// tau = m^(-1/2) clamped to (2/n, 0.49).
std::pair<double, int> default_ls_smoothing(int n, double h,
                                            std::vector<std::string>* warnings = nullptr);

}  // namespace reldev
