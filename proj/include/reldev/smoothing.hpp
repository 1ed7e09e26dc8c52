#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "reldev/kernels.hpp"
#include "reldev/parallel.hpp"
#include "reldev/series.hpp"

namespace reldev {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
    bool contains(double t) const { return t >= lo && t <= hi; }
};

// Interior interval [x0 v h, x1 ^ (1-h)] on which boundary effects of the
// local-linear fit are absent.
Interval fit_interval(double x0, double x1, double h);

// Evaluation grid: design points i/n inside the interval, with refine-1
// extra equispaced points per cell. cell is the grid spacing.
struct Grid {
    std::vector<double> points;
    double cell = 0.0;
};
Grid make_grid(int n, const Interval& interval, int refine = 1);

struct LinFit {
    double intercept = 0.0;  // estimate of the mean at t
    double slope = 0.0;
};

// Weighted least-squares line through (i/n, X_i) with weights K((i/n-t)/h).
// Throws singular_design when fewer than two effective points remain or the
// scaled normal matrix has condition number beyond 1e12.
LinFit local_linear_fit(const TimeSeries& series, const KernelSpec& k, double h, double t);

// Bias-corrected estimate 2*fit_{h/sqrt(2)} - fit_h at each point of ts.
// Points may lie anywhere in [0,1]; boundary fits are permitted.
std::vector<double> jackknife_values(const TimeSeries& series, const KernelSpec& k, double h,
                                     std::span<const double> ts, exec policy = exec::par);

struct SmoothCurve {
    std::vector<double> grid;
    std::vector<double> values;
    double bandwidth = 0.0;
    Interval interval;  // valid-inference interval I_n
    double cell = 0.0;
    int n = 0;  // sample size behind the estimate
};

// Jackknife curve on a grid contained in `interval`.
SmoothCurve jackknife_curve(const TimeSeries& series, const KernelSpec& k, double h,
                            const Grid& grid, const Interval& interval,
                            exec policy = exec::par);

enum class FoldScheme { random, contiguous };

struct CvOptions {
    int folds = 10;
    std::uint64_t seed = 0;
    FoldScheme scheme = FoldScheme::random;
    // Evaluate every ceil(n/100)-th candidate when n > 1000. Off by default.
    bool thin = false;
    exec policy = exec::par;
};

struct CvResult {
    double bandwidth = 0.0;
    // (h, scaled prediction error); error is NaN for candidates with a
    // singular fit.
    std::vector<std::pair<double, double>> trace;
};

// K-fold cross-validation over the candidate grid h = 1/n, ..., floor(n/2)/n,
// scoring each h by the out-of-fold squared prediction error of the jackknife
// estimator scaled by 1/(1-h/2). Ties break toward the smallest h. Throws
// no_valid_bandwidth if every candidate fails.
CvResult cv_bandwidth(const TimeSeries& series, const KernelSpec& k, const CvOptions& options);

// Fold id per observation; sizes differ by at most one. Deterministic in seed.
std::vector<int> make_folds(int n, int folds, std::uint64_t seed,
                            FoldScheme scheme = FoldScheme::random);

}  // namespace reldev
