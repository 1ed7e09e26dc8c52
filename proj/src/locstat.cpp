#include "reldev/locstat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "reldev/errors.hpp"

namespace reldev {
namespace {

constexpr double kLog2 = 0.6931471805599453;

}  // namespace

LocalLrvCurve local_lrv_curve(const TimeSeries& series, const KernelSpec& k, double tau, int m,
                              std::span<const double> grid, exec policy,
                              std::vector<std::string>* warnings) {
    require_estimable(series);
    const int n = series.n();
    if (m < 1) throw std::invalid_argument("block length must be >= 1");
    if (2 * m >= n)
        throw block_too_large("local variance block length " + std::to_string(m) +
                              " must be below n/2 = " + std::to_string(n / 2));
    if (!(tau > 1.0 / n) || !(tau < 0.5))
        throw std::invalid_argument("variance bandwidth tau must lie in (1/n, 1/2)");

    // Squared scaled difference of the blocks [j-m+1, j] and [j+1, j+m];
    // defined for 1-based j in [m, n-m].
    const int jlo = m - 1, jhi = n - m - 1;  // 0-based
    std::vector<double> block_stat(jhi - jlo + 1, 0.0);
    {
        std::vector<double> prefix(n + 1, 0.0);
        for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series.values[i];
        for (int j = jlo; j <= jhi; ++j) {
            const double left = prefix[j + 1] - prefix[j + 1 - m];
            const double right = prefix[j + 1 + m] - prefix[j + 1];
            const double diff = left - right;
            block_stat[j - jlo] = diff * diff / (2.0 * m);
        }
    }

    const double t_lo = double(m) / n;
    const double t_hi = 1.0 - double(m) / n;
    // -1 marks an empty window; checked (and rejected) outside the loop.
    auto value_at = [&](double t) {
        double wsum = 0.0, acc = 0.0;
        const int ilo = std::max(jlo, static_cast<int>(std::floor(n * (t - tau))) - 1);
        const int ihi = std::min(jhi, static_cast<int>(std::ceil(n * (t + tau))) - 1);
        for (int j = ilo; j <= ihi; ++j) {
            const double w = k.eval((double(j + 1) / n - t) / tau);
            wsum += w;
            acc += w * block_stat[j - jlo];
        }
        return wsum > 0.0 ? acc / wsum : -1.0;
    };

    LocalLrvCurve curve;
    curve.grid.assign(grid.begin(), grid.end());
    curve.tau = tau;
    curve.m = m;
    curve.boundary_lo = value_at(t_lo);
    curve.boundary_hi = value_at(t_hi);
    curve.values.resize(grid.size());
    parallel_for(static_cast<std::int64_t>(grid.size()), policy, [&](std::int64_t i) {
        const double t = grid[i];
        curve.values[i] = t < t_lo ? curve.boundary_lo : t > t_hi ? curve.boundary_hi : value_at(t);
    });
    if (curve.boundary_lo < 0.0 || curve.boundary_hi < 0.0 ||
        std::any_of(curve.values.begin(), curve.values.end(), [](double v) { return v < 0.0; }))
        throw std::invalid_argument("variance window contains no block statistic; increase tau");
    bool floored = false;
    for (double& v : curve.values) {
        if (v < kVarianceFloor) {
            v = kVarianceFloor;
            floored = true;
        }
    }
    curve.boundary_lo = std::max(curve.boundary_lo, kVarianceFloor);
    curve.boundary_hi = std::max(curve.boundary_hi, kVarianceFloor);
    curve.floored = floored;
    if (floored && warnings)
        warnings->push_back("local long-run variance hit the positivity floor " +
                            std::to_string(kVarianceFloor) +
                            "; the standardized deviation is unreliable");
    return curve;
}

DeviationCurve standardized_deviation(const SmoothCurve& curve, const LocalLrvCurve& lrv,
                                      double g_hat) {
    if (lrv.grid.size() != curve.grid.size())
        throw std::invalid_argument("variance curve grid does not match the smooth curve grid");
    if (lrv.floored)
        throw degenerate_variance("local long-run variance degenerated to the positivity floor");
    SmoothCurve ratio = curve;
    for (std::size_t i = 0; i < ratio.values.size(); ++i)
        ratio.values[i] = curve.values[i] / std::sqrt(lrv.values[i]);
    return deviation_curve(ratio, g_hat);
}

TestOutcome ls_test(const DeviationCurve& dev_sigma, const ExtremalSet& eset, const KernelSpec& k,
                    const TestConfig& cfg, exec policy) {
    cfg.validate();
    if (!(eset.measure > 0.0)) throw std::invalid_argument("extremal set has zero measure");
    const double ell = scaling_ell(eset.measure, dev_sigma.bandwidth, k.lambda_k);
    const double nh = double(dev_sigma.n) * dev_sigma.bandwidth;

    TestOutcome out;
    out.statistic = dev_sigma.sup;
    out.sigma_hat = 1.0;  // statistic is already standardized
    out.bandwidth = dev_sigma.bandwidth;
    out.ell_used = ell;
    out.extremal_measure = eset.measure;

    const double z = (dev_sigma.sup - cfg.delta) * std::sqrt(nh) * ell / k.l2_norm_kstar - ell * ell;
    if (cfg.variant == TestVariant::simulated_quantile) {
        const int j = cfg.delta > 0.0 ? 1 : 2;
        const std::vector<double> reps = simulate_gn_replicates(
            eset, dev_sigma.n, dev_sigma.bandwidth, k, j, cfg.quantile_reps, cfg.seed, policy);
        const double q = empirical_quantile(reps, cfg.alpha);
        out.threshold = (q + ell * ell) * k.l2_norm_kstar / (std::sqrt(nh) * ell) + cfg.delta;
        std::size_t above = 0;
        for (double r : reps) above += r > z;
        out.p_value = std::max(double(above) / double(reps.size()), 0.5 / double(reps.size()));
        out.quantile_source =
            j == 1 ? QuantileSource::simulated_gn1 : QuantileSource::simulated_gn2;
    } else {
        const double location = cfg.delta > 0.0 ? 0.0 : kLog2;
        const double q = gumbel_quantile(location, 1.0 - cfg.alpha);
        out.threshold = (q + ell * ell) * k.l2_norm_kstar / (std::sqrt(nh) * ell) + cfg.delta;
        out.p_value = 1.0 - gumbel_cdf(location, z);
        out.quantile_source = QuantileSource::gumbel_closed_form;
    }
    out.reject = out.statistic > out.threshold;
    return out;
}

std::pair<double, int> default_ls_smoothing(int n, double h, std::vector<std::string>* warnings) {
    if (n < 100) throw std::invalid_argument("locally stationary smoothing needs n >= 100");
    if (!(h > 0.0) || h > 0.5) throw std::invalid_argument("bandwidth must lie in (0, 1/2]");
    const double raw =
        std::sqrt(std::abs(std::log(h))) * std::log(double(n)) * std::sqrt(double(n) * h);
    const int m = std::max(2, static_cast<int>(std::lround(raw)));
    double tau = 1.0 / std::sqrt(double(m));
    const double tau_lo = 2.0 / n;
    if (tau >= 0.49) {
        if (warnings) warnings->push_back("variance bandwidth clamped to 0.49");
        tau = 0.49;
    }
    if (tau <= tau_lo) {
        if (warnings)
            warnings->push_back("variance bandwidth clamped to 2/n = " + std::to_string(tau_lo));
        tau = std::nextafter(tau_lo, 1.0);
    }
    return {tau, m};
}

}  // namespace reldev
