#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reldev/benchmarks.hpp"
#include "reldev/changetime.hpp"
#include "reldev/deviation.hpp"
#include "reldev/kernels.hpp"
#include "reldev/locstat.hpp"
#include "reldev/parallel.hpp"
#include "reldev/series.hpp"
#include "reldev/smoothing.hpp"
#include "reldev/testing.hpp"
#include "reldev/variance.hpp"

namespace reldev {

// One full analysis: bandwidth selection, smoothing, benchmark, deviation,
// noise scale, extremal set, test decision, optional first-exceedance time.
struct AnalysisOptions {
    BenchmarkSpec benchmark;
    double delta = 0.0;
    double alpha = 0.05;
    TestVariant variant = TestVariant::simulated_quantile;
    double x0 = 0.0, x1 = 1.0;
    std::optional<double> bandwidth;  // empty: cross-validated
    int cv_folds = 10;
    FoldScheme fold_scheme = FoldScheme::random;
    bool thin_cv = false;
    int refine = 1;
    bool use_ell_prime = true;
    int quantile_reps = 2000;
    std::uint64_t seed = 0;
    bool locally_stationary = false;
    bool compute_first_change = false;
    std::optional<double> first_change_delta_n;  // empty: default rate rule
    double delta_n_c = 2.0;
    exec policy = exec::par;

    void validate() const;
};

struct AnalysisResult {
    double bandwidth = 0.0;
    bool bandwidth_from_cv = false;
    std::vector<std::pair<double, double>> cv_trace;
    SmoothCurve curve;
    double g_hat = 0.0;
    DeviationCurve dev;
    double sigma2 = 0.0;  // stationary path; 1 on the standardized path
    int block_length = 1;
    std::optional<LocalLrvCurve> local_lrv;
    double rho = 0.0;
    ExtremalSet eset;
    TestOutcome outcome;
    std::optional<FirstExceedance> first_change;
    double band_halfwidth = 0.0;  // simultaneous band half-width; NaN on LS path
    std::vector<std::string> warnings;
};

AnalysisResult analyze(const TimeSeries& series, const KernelSpec& kernel,
                       const AnalysisOptions& options);

const char* variant_name(TestVariant v);
TestVariant parse_variant(const std::string& name);
const char* quantile_source_name(QuantileSource q);

}  // namespace reldev
