#pragma once

#include <vector>

#include "reldev/smoothing.hpp"

namespace reldev {

enum class ArgmaxSign { plus, minus, both };

// Grid-sampled deviation curve d(t) = mu_tilde(t) - g_hat together with its
// supremum statistic sup = max |d| over the grid.
struct DeviationCurve {
    std::vector<double> grid;
    std::vector<double> values;
    Interval interval;
    double bandwidth = 0.0;
    double cell = 0.0;
    int n = 0;
    double sup = 0.0;
    ArgmaxSign argmax_sign = ArgmaxSign::plus;
};

DeviationCurve deviation_curve(const SmoothCurve& curve, double g_hat);

// Scaling sequence sqrt(2 log(lambda_k * measure / (2 pi h))). The log
// argument is clamped below at e, so the result is always >= sqrt(2);
// the clamp binds only when the measure is tiny and is conservative.
double scaling_ell(double measure, double h, double lambda_k);

// Width of the near-supremum band: ell^(1+eps) / sqrt(n h) with eps = 0.001.
double default_rho(int n, double h, double ell);

// Finite union of closed subintervals of I_n where |d| is within rho of its
// supremum, split by the sign of the attaining deviation.
struct ExtremalSet {
    struct Component {
        double lo = 0.0;
        double hi = 0.0;
    };
    std::vector<Component> intervals;        // union, sorted, disjoint
    std::vector<Component> plus_intervals;   // d close to +sup
    std::vector<Component> minus_intervals;  // d close to -sup
    std::vector<double> grid_points;         // member grid points of the union
    double measure = 0.0;                    // interval lengths + one cell each
    double cell = 0.0;
    double rho = 0.0;
};

// Merges maximal runs of qualifying grid points into closed intervals; each
// component is charged one extra grid cell so singletons carry positive
// measure, and the total is floored at one cell.
ExtremalSet estimate_extremal_set(const DeviationCurve& dev, double rho);

}  // namespace reldev
