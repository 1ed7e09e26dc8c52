#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reldev/deviation.hpp"
#include "reldev/kernels.hpp"
#include "reldev/parallel.hpp"

namespace reldev {

enum class TestVariant { band, gumbel_simple, gumbel_extremal, simulated_quantile };
enum class QuantileSource { gumbel_closed_form, simulated_gn1, simulated_gn2 };

// Configuration of one test of H0: sup |mu - g| <= delta at level alpha.
struct TestConfig {
    double delta = 0.0;
    double alpha = 0.05;
    TestVariant variant = TestVariant::simulated_quantile;
    double x0 = 0.0, x1 = 1.0;
    // Base the scaling sequence of the band/simple tests on x1-x0 instead of
    // the boundary-trimmed interval length.
    bool use_ell_prime = true;
    int quantile_reps = 2000;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TestOutcome {
    double statistic = 0.0;
    double threshold = 0.0;
    bool reject = false;
    double p_value = 1.0;  // smallest alpha at which the test rejects
    double sigma_hat = 0.0;
    double bandwidth = 0.0;
    double ell_used = 0.0;
    std::optional<double> extremal_measure;
    QuantileSource quantile_source = QuantileSource::gumbel_closed_form;
};

// beta-quantile of the Gumbel law with location a: a - log(-log beta).
double gumbel_quantile(double a, double beta);
double gumbel_cdf(double a, double x);

// Confidence-band test: reject when the statistic exceeds delta plus the
// simultaneous band half-width (q_{log 2} + ell^2) sigma ||K*|| / (sqrt(nh) ell).
TestOutcome conf_band_test(const DeviationCurve& dev, const KernelSpec& k, double sigma_hat,
                           const TestConfig& cfg);

// Same shape with Gumbel location log 2 for delta = 0 and 0 for delta > 0.
TestOutcome gumbel_simple_test(const DeviationCurve& dev, const KernelSpec& k, double sigma_hat,
                               const TestConfig& cfg);

// Scaling sequence taken over the estimated extremal set instead of I_n.
TestOutcome gumbel_extremal_test(const DeviationCurve& dev, const ExtremalSet& eset,
                                 const KernelSpec& k, double sigma_hat, const TestConfig& cfg);

// Gaussian-multiplier replicates of the standardized supremum over the
// extremal set: ell sqrt(nh)/||K*|| * sup_t (nh)^-1 sum_i V_i K*((i/n-t)/h)
// minus ell^2, with the absolute value inside the sup for j = 2. Each
// replicate draws its normals from a substream of (seed, replicate).
std::vector<double> simulate_gn_replicates(const ExtremalSet& eset, int n, double h,
                                           const KernelSpec& k, int j, int reps,
                                           std::uint64_t seed, exec policy = exec::par);

// Order statistic at index ceil(reps * (1-alpha)) of the sorted replicates.
double empirical_quantile(std::vector<double> replicates, double alpha);

double simulate_gn_quantile(const ExtremalSet& eset, int n, double h, const KernelSpec& k, int j,
                            int reps, double alpha, std::uint64_t seed, exec policy = exec::par);

// Test with a simulated critical value; j = 1 when delta > 0, else j = 2.
TestOutcome simulated_quantile_test(const DeviationCurve& dev, const ExtremalSet& eset,
                                    const KernelSpec& k, double sigma_hat, const TestConfig& cfg,
                                    exec policy = exec::par);

}  // namespace reldev
