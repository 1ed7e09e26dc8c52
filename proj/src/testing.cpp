#include "reldev/testing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "reldev/errors.hpp"
#include "reldev/rng.hpp"

namespace reldev {
namespace {

constexpr double kLog2 = 0.6931471805599453;

double scale_factor(double sigma_hat, double l2_kstar, int n, double h, double ell) {
    return sigma_hat * l2_kstar / (std::sqrt(double(n) * h) * ell);
}

// Standardized statistic on the Gumbel scale.
double standardized(const DeviationCurve& dev, double delta, double sigma_hat, double l2_kstar,
                    double ell) {
    return (dev.sup - delta) * std::sqrt(double(dev.n) * dev.bandwidth) * ell /
               (sigma_hat * l2_kstar) -
           ell * ell;
}

double band_ell(const DeviationCurve& dev, const KernelSpec& k, const TestConfig& cfg) {
    const double measure = cfg.use_ell_prime ? cfg.x1 - cfg.x0 : dev.interval.length();
    return scaling_ell(measure, dev.bandwidth, k.lambda_k);
}

TestOutcome closed_form_outcome(const DeviationCurve& dev, const KernelSpec& k, double sigma_hat,
                                const TestConfig& cfg, double location, double ell,
                                std::optional<double> extremal_measure) {
    if (!(sigma_hat > 0.0)) throw degenerate_variance("sigma_hat must be positive");
    TestOutcome out;
    out.statistic = dev.sup;
    const double q = gumbel_quantile(location, 1.0 - cfg.alpha);
    out.threshold =
        (q + ell * ell) * scale_factor(sigma_hat, k.l2_norm_kstar, dev.n, dev.bandwidth, ell) +
        cfg.delta;
    out.reject = out.statistic > out.threshold;
    out.p_value =
        1.0 - gumbel_cdf(location, standardized(dev, cfg.delta, sigma_hat, k.l2_norm_kstar, ell));
    out.sigma_hat = sigma_hat;
    out.bandwidth = dev.bandwidth;
    out.ell_used = ell;
    out.extremal_measure = extremal_measure;
    out.quantile_source = QuantileSource::gumbel_closed_form;
    return out;
}

}  // namespace

void TestConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_probability(alpha);
    if (delta < 0.0) throw std::invalid_argument("delta must be >= 0");
    if (!(x0 >= 0.0 && x0 < x1 && x1 <= 1.0))
        throw std::invalid_argument("need 0 <= x0 < x1 <= 1");
    if (quantile_reps < 100) throw std::invalid_argument("quantile_reps must be >= 100");
}

double gumbel_quantile(double a, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw invalid_probability(beta);
    return a - std::log(-std::log(beta));
}

double gumbel_cdf(double a, double x) { return std::exp(-std::exp(-(x - a))); }

TestOutcome conf_band_test(const DeviationCurve& dev, const KernelSpec& k, double sigma_hat,
                           const TestConfig& cfg) {
    cfg.validate();
    return closed_form_outcome(dev, k, sigma_hat, cfg, kLog2, band_ell(dev, k, cfg), std::nullopt);
}

TestOutcome gumbel_simple_test(const DeviationCurve& dev, const KernelSpec& k, double sigma_hat,
                               const TestConfig& cfg) {
    cfg.validate();
    const double location = cfg.delta > 0.0 ? 0.0 : kLog2;
    return closed_form_outcome(dev, k, sigma_hat, cfg, location, band_ell(dev, k, cfg),
                               std::nullopt);
}

TestOutcome gumbel_extremal_test(const DeviationCurve& dev, const ExtremalSet& eset,
                                 const KernelSpec& k, double sigma_hat, const TestConfig& cfg) {
    cfg.validate();
    if (!(eset.measure > 0.0)) throw std::invalid_argument("extremal set has zero measure");
    const double location = cfg.delta > 0.0 ? 0.0 : kLog2;
    const double ell = scaling_ell(eset.measure, dev.bandwidth, k.lambda_k);
    return closed_form_outcome(dev, k, sigma_hat, cfg, location, ell, eset.measure);
}

std::vector<double> simulate_gn_replicates(const ExtremalSet& eset, int n, double h,
                                           const KernelSpec& k, int j, int reps,
                                           std::uint64_t seed, exec policy) {
    if (j != 1 && j != 2) throw std::invalid_argument("j must be 1 or 2");
    if (reps < 100) throw std::invalid_argument("need at least 100 replicates");
    if (eset.grid_points.empty()) throw std::invalid_argument("extremal set has no grid points");
    const double ell = scaling_ell(eset.measure, h, k.lambda_k);
    const double nh = double(n) * h;

    // Multiplier weights per extremal grid point, flattened over the kernel
    // window; computed once, shared read-only by all replicates.
    const int npts = static_cast<int>(eset.grid_points.size());
    std::vector<int> lo(npts), len(npts), offset(npts);
    std::vector<double> weights;
    for (int p = 0; p < npts; ++p) {
        const double t = eset.grid_points[p];
        const int ilo = std::max(0, static_cast<int>(std::floor(n * (t - h))) - 1);
        const int ihi = std::min(n - 1, static_cast<int>(std::ceil(n * (t + h))) - 1);
        lo[p] = ilo;
        len[p] = ihi - ilo + 1;
        offset[p] = static_cast<int>(weights.size());
        for (int i = ilo; i <= ihi; ++i)
            weights.push_back(kstar_eval(k, (double(i + 1) / n - t) / h));
    }

    std::vector<double> replicates(reps);
    parallel_for(reps, policy, [&](std::int64_t r) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(r));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = normal(rng);
        double sup = -std::numeric_limits<double>::infinity();
        for (int p = 0; p < npts; ++p) {
            const double* w = weights.data() + offset[p];
            const double* vv = v.data() + lo[p];
            double acc = 0.0;
            const int m = len[p];
#pragma omp simd reduction(+ : acc)
            for (int i = 0; i < m; ++i) acc += w[i] * vv[i];
            const double s = acc / nh;
            sup = std::max(sup, j == 2 ? std::abs(s) : s);
        }
        replicates[r] = ell * std::sqrt(nh) / k.l2_norm_kstar * sup - ell * ell;
    });
    return replicates;
}

double empirical_quantile(std::vector<double> replicates, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_probability(alpha);
    if (replicates.empty()) throw std::invalid_argument("no replicates");
    const auto reps = replicates.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(double(reps) * (1.0 - alpha)));
    rank = std::min(std::max<std::size_t>(rank, 1), reps);
    std::nth_element(replicates.begin(), replicates.begin() + (rank - 1), replicates.end());
    return replicates[rank - 1];
}

double simulate_gn_quantile(const ExtremalSet& eset, int n, double h, const KernelSpec& k, int j,
                            int reps, double alpha, std::uint64_t seed, exec policy) {
    return empirical_quantile(simulate_gn_replicates(eset, n, h, k, j, reps, seed, policy), alpha);
}

TestOutcome simulated_quantile_test(const DeviationCurve& dev, const ExtremalSet& eset,
                                    const KernelSpec& k, double sigma_hat, const TestConfig& cfg,
                                    exec policy) {
    cfg.validate();
    if (!(sigma_hat > 0.0)) throw degenerate_variance("sigma_hat must be positive");
    if (!(eset.measure > 0.0)) throw std::invalid_argument("extremal set has zero measure");
    const int j = cfg.delta > 0.0 ? 1 : 2;
    const std::vector<double> reps = simulate_gn_replicates(
        eset, dev.n, dev.bandwidth, k, j, cfg.quantile_reps, cfg.seed, policy);
    const double q = empirical_quantile(reps, cfg.alpha);
    const double ell = scaling_ell(eset.measure, dev.bandwidth, k.lambda_k);

    TestOutcome out;
    out.statistic = dev.sup;
    out.threshold =
        (q + ell * ell) * scale_factor(sigma_hat, k.l2_norm_kstar, dev.n, dev.bandwidth, ell) +
        cfg.delta;
    out.reject = out.statistic > out.threshold;
    const double z = standardized(dev, cfg.delta, sigma_hat, k.l2_norm_kstar, ell);
    std::size_t above = 0;
    for (double r : reps) above += r > z;
    out.p_value = std::max(double(above) / double(reps.size()), 0.5 / double(reps.size()));
    out.sigma_hat = sigma_hat;
    out.bandwidth = dev.bandwidth;
    out.ell_used = ell;
    out.extremal_measure = eset.measure;
    out.quantile_source = j == 1 ? QuantileSource::simulated_gn1 : QuantileSource::simulated_gn2;
    return out;
}

}  // namespace reldev
