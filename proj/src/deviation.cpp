#include "reldev/deviation.hpp"

#include <cmath>
#include <stdexcept>

namespace reldev {
namespace {

constexpr double kTwoPi = 6.283185307179586;

std::vector<ExtremalSet::Component> merge_runs(const std::vector<double>& grid,
                                               const std::vector<unsigned char>& mask) {
    std::vector<ExtremalSet::Component> runs;
    const int m = static_cast<int>(grid.size());
    int i = 0;
    while (i < m) {
        if (!mask[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < m && mask[j + 1]) ++j;
        runs.push_back({grid[i], grid[j]});
        i = j + 1;
    }
    return runs;
}

}  // namespace

DeviationCurve deviation_curve(const SmoothCurve& curve, double g_hat) {
    DeviationCurve dev;
    dev.grid = curve.grid;
    dev.interval = curve.interval;
    dev.bandwidth = curve.bandwidth;
    dev.cell = curve.cell;
    dev.n = curve.n;
    dev.values.resize(curve.values.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        dev.values[i] = curve.values[i] - g_hat;
        sup = std::max(sup, std::abs(dev.values[i]));
    }
    dev.sup = sup;
    bool has_plus = false, has_minus = false;
    for (double v : dev.values) {
        if (std::abs(v) == sup) (v >= 0.0 ? has_plus : has_minus) = true;
    }
    dev.argmax_sign = has_plus && has_minus ? ArgmaxSign::both
                      : has_minus           ? ArgmaxSign::minus
                                            : ArgmaxSign::plus;
    return dev;
}

double scaling_ell(double measure, double h, double lambda_k) {
    if (measure < 0.0 || !(h > 0.0) || !(lambda_k > 0.0))
        throw std::invalid_argument("scaling_ell needs measure >= 0, h > 0, lambda_k > 0");
    const double arg = lambda_k * measure / (kTwoPi * h);
    const double e = std::exp(1.0);
    return std::sqrt(2.0 * std::log(std::max(arg, e)));
}

double default_rho(int n, double h, double ell) {
    if (!(ell > 0.0) || !(n * h > 0.0))
        throw std::invalid_argument("default_rho needs ell > 0 and n*h > 0");
    return std::pow(ell, 1.001) / std::sqrt(double(n) * h);
}

ExtremalSet estimate_extremal_set(const DeviationCurve& dev, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    const std::size_t m = dev.grid.size();
    std::vector<unsigned char> plus(m, 0), minus(m, 0), any(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        plus[i] = dev.sup - dev.values[i] <= rho;
        minus[i] = dev.sup + dev.values[i] <= rho;
        any[i] = plus[i] || minus[i];
    }
    ExtremalSet set;
    set.rho = rho;
    set.cell = dev.cell;
    set.plus_intervals = merge_runs(dev.grid, plus);
    set.minus_intervals = merge_runs(dev.grid, minus);
    set.intervals = merge_runs(dev.grid, any);
    for (std::size_t i = 0; i < m; ++i)
        if (any[i]) set.grid_points.push_back(dev.grid[i]);
    double measure = 0.0;
    for (const auto& c : set.intervals) measure += (c.hi - c.lo) + dev.cell;
    set.measure = std::max(measure, dev.cell);
    return set;
}

}  // namespace reldev
