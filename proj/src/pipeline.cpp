#include "reldev/pipeline.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "reldev/errors.hpp"
#include "reldev/rng.hpp"

namespace reldev {
namespace {

constexpr double kLog2 = 0.6931471805599453;

// Substream tags for the seeds consumed by one analysis.
constexpr std::uint64_t kCvStream = 101;
constexpr std::uint64_t kQuantileStream = 102;

double simultaneous_band_halfwidth(const DeviationCurve& dev, const KernelSpec& k,
                                   double sigma_hat, const AnalysisOptions& opts) {
    const double measure = opts.use_ell_prime ? opts.x1 - opts.x0 : dev.interval.length();
    const double ell = scaling_ell(measure, dev.bandwidth, k.lambda_k);
    const double q = gumbel_quantile(kLog2, 1.0 - opts.alpha);
    return (q + ell * ell) * sigma_hat * k.l2_norm_kstar /
           (std::sqrt(double(dev.n) * dev.bandwidth) * ell);
}

}  // namespace

void AnalysisOptions::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_probability(alpha);
    if (delta < 0.0) throw invalid_config("delta must be >= 0");
    if (!(x0 >= 0.0 && x0 < x1 && x1 <= 1.0)) throw invalid_config("need 0 <= x0 < x1 <= 1");
    if (bandwidth && (!(*bandwidth > 0.0) || *bandwidth > 0.5))
        throw invalid_config("fixed bandwidth must lie in (0, 1/2]");
    if (refine < 1) throw invalid_config("grid refinement must be >= 1");
    if (quantile_reps < 100) throw invalid_config("quantile_reps must be >= 100");
    if (locally_stationary) {
        if (benchmark.kind != BenchmarkSpec::Kind::constant &&
            benchmark.kind != BenchmarkSpec::Kind::full_mean)
            throw invalid_config(
                "locally stationary analysis supports only constant or full-mean benchmarks");
        if (variant == TestVariant::band || variant == TestVariant::gumbel_simple)
            throw invalid_config(
                "locally stationary analysis supports only the extremal-set test variants");
    }
    if (compute_first_change && !(delta > 0.0))
        throw invalid_config("first-change estimation needs delta > 0");
}

AnalysisResult analyze(const TimeSeries& series, const KernelSpec& kernel,
                       const AnalysisOptions& options) {
    options.validate();
    require_estimable(series);
    const int n = series.n();

    AnalysisResult result;
    if (options.bandwidth) {
        result.bandwidth = *options.bandwidth;
    } else {
        CvOptions cv;
        cv.folds = options.cv_folds;
        cv.seed = derive_seed(options.seed, kCvStream);
        cv.scheme = options.fold_scheme;
        cv.thin = options.thin_cv;
        cv.policy = options.policy;
        CvResult cv_result = cv_bandwidth(series, kernel, cv);
        result.bandwidth = cv_result.bandwidth;
        result.cv_trace = std::move(cv_result.trace);
        result.bandwidth_from_cv = true;
    }
    const double h = result.bandwidth;

    const Interval interval = fit_interval(options.x0, options.x1, h);
    if (!(interval.lo <= interval.hi))
        throw invalid_config("bandwidth " + std::to_string(h) +
                             " leaves an empty inference interval");
    const Grid grid = make_grid(n, interval, options.refine);
    result.curve = jackknife_curve(series, kernel, h, grid, interval, options.policy);

    TestConfig cfg;
    cfg.delta = options.delta;
    cfg.alpha = options.alpha;
    cfg.variant = options.variant;
    cfg.x0 = options.x0;
    cfg.x1 = options.x1;
    cfg.use_ell_prime = options.use_ell_prime;
    cfg.quantile_reps = options.quantile_reps;
    cfg.seed = derive_seed(options.seed, kQuantileStream);

    double sigma_for_margin = 1.0;
    if (!options.locally_stationary) {
        result.g_hat =
            estimate_benchmark(options.benchmark, series, kernel, h, &result.warnings);
        result.dev = deviation_curve(result.curve, result.g_hat);

        // Residuals use fits at every design point, including the boundary.
        std::vector<double> design(n);
        for (int i = 0; i < n; ++i) design[i] = series.design_point(i);
        const std::vector<double> fitted =
            jackknife_values(series, kernel, h, design, options.policy);
        std::vector<double> residuals(n);
        for (int i = 0; i < n; ++i) residuals[i] = series.values[i] - fitted[i];
        result.block_length = block_length_rule(residuals);
        result.sigma2 = lrv_estimate(series, result.block_length).sigma2;
        if (result.sigma2 < kVarianceFloor) {
            result.warnings.push_back("long-run variance estimate " +
                                      std::to_string(result.sigma2) + " floored at " +
                                      std::to_string(kVarianceFloor));
            result.sigma2 = kVarianceFloor;
        }
        const double sigma_hat = std::sqrt(result.sigma2);
        sigma_for_margin = sigma_hat;

        const double ell_in = scaling_ell(interval.length(), h, kernel.lambda_k);
        result.rho = default_rho(n, h, ell_in);
        result.eset = estimate_extremal_set(result.dev, result.rho);

        switch (options.variant) {
            case TestVariant::band:
                result.outcome = conf_band_test(result.dev, kernel, sigma_hat, cfg);
                break;
            case TestVariant::gumbel_simple:
                result.outcome = gumbel_simple_test(result.dev, kernel, sigma_hat, cfg);
                break;
            case TestVariant::gumbel_extremal:
                result.outcome = gumbel_extremal_test(result.dev, result.eset, kernel, sigma_hat, cfg);
                break;
            case TestVariant::simulated_quantile:
                result.outcome = simulated_quantile_test(result.dev, result.eset, kernel,
                                                         sigma_hat, cfg, options.policy);
                break;
        }
        result.band_halfwidth = simultaneous_band_halfwidth(result.dev, kernel, sigma_hat, options);
    } else {
        auto [tau, m] = default_ls_smoothing(n, h, &result.warnings);
        result.local_lrv = local_lrv_curve(series, kernel, tau, m, result.curve.grid,
                                           options.policy, &result.warnings);
        std::vector<double> ratio(result.curve.values.size());
        for (std::size_t i = 0; i < ratio.size(); ++i)
            ratio[i] = result.curve.values[i] / std::sqrt(result.local_lrv->values[i]);
        if (options.benchmark.kind == BenchmarkSpec::Kind::constant) {
            result.g_hat = options.benchmark.value;
        } else {
            result.g_hat =
                std::accumulate(ratio.begin(), ratio.end(), 0.0) / double(ratio.size());
        }
        result.dev = standardized_deviation(result.curve, *result.local_lrv, result.g_hat);
        result.sigma2 = 1.0;
        result.block_length = m;

        const double ell_in = scaling_ell(interval.length(), h, kernel.lambda_k);
        result.rho = default_rho(n, h, ell_in);
        result.eset = estimate_extremal_set(result.dev, result.rho);
        result.outcome = ls_test(result.dev, result.eset, kernel, cfg, options.policy);
        result.band_halfwidth = std::numeric_limits<double>::quiet_NaN();
    }

    if (options.compute_first_change) {
        double margin = options.first_change_delta_n.value_or(
            default_delta_n(sigma_for_margin, kernel, n, h, options.delta_n_c,
                            options.x1 - options.x0, &result.warnings));
        result.first_change = first_exceedance(result.dev, options.delta, margin);
    }
    return result;
}

const char* variant_name(TestVariant v) {
    switch (v) {
        case TestVariant::band: return "band";
        case TestVariant::gumbel_simple: return "gumbel";
        case TestVariant::gumbel_extremal: return "extremal";
        case TestVariant::simulated_quantile: return "simulated";
    }
    return "?";
}

TestVariant parse_variant(const std::string& name) {
    if (name == "band") return TestVariant::band;
    if (name == "gumbel") return TestVariant::gumbel_simple;
    if (name == "extremal") return TestVariant::gumbel_extremal;
    if (name == "simulated") return TestVariant::simulated_quantile;
    throw invalid_config("unknown test variant '" + name +
                         "' (expected band | gumbel | extremal | simulated)");
}

const char* quantile_source_name(QuantileSource q) {
    switch (q) {
        case QuantileSource::gumbel_closed_form: return "gumbel-closed-form";
        case QuantileSource::simulated_gn1: return "simulated-gn1";
        case QuantileSource::simulated_gn2: return "simulated-gn2";
    }
    return "?";
}

}  // namespace reldev
