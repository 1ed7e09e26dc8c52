#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "reldev/benchmarks.hpp"
#include "reldev/parallel.hpp"
#include "reldev/pipeline.hpp"
#include "reldev/series.hpp"
#include "reldev/testing.hpp"

namespace reldev {

// Stationary error processes of the simulation study; all have marginal
// variance 1/4.
enum class ErrorProcess { iid, ma, ar };

struct Scenario {
    enum class Mean { mu1, mu2, constant, custom };

    Mean mean = Mean::constant;
    double mu1_a = 0.0;      // bump size of the mu1 family
    double const_value = 0;  // constant mean level
    std::function<double(double)> custom;

    ErrorProcess errors = ErrorProcess::iid;
    int n = 200;
    double delta = 1.0;
    double x0 = 0.0, x1 = 1.0;
    BenchmarkSpec benchmark;
    TestVariant test_variant = TestVariant::simulated_quantile;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    int quantile_reps = 2000;
    int cv_folds = 10;
};

double scenario_mean(const Scenario& scenario, double t);

// True benchmark value g(mu) of the scenario, by quadrature where needed.
double scenario_true_g(const Scenario& scenario);

// True maximum deviation sup |mu - g(mu)| over [x0, x1] on a fine grid.
double scenario_d_inf(const Scenario& scenario);

// X_i = mu(i/n) + eps_i with the scenario's error recursion; the AR process
// warms up over 1000 steps from zero.
TimeSeries generate(const Scenario& scenario, std::uint64_t seed);

struct McResult {
    int runs = 0;
    int rejections = 0;
    int failures = 0;  // runs that errored; counted as non-rejections
    double rate = 0.0;
    double se = 0.0;  // binomial standard error
};

// Monte Carlo rejection rate of the scenario's test over independent runs;
// each run draws fresh data, reselects the bandwidth and noise scale, and
// applies the configured test. Deterministic in the scenario seed regardless
// of thread count.
McResult run_mc(const Scenario& scenario, int runs, exec policy = exec::par);

// The per-run pipeline, exposed for end-to-end checks.
AnalysisResult run_single(const Scenario& scenario, std::uint64_t run_seed);

// Scenario builders for the two model families of the study.
Scenario mu1_scenario(double a, ErrorProcess errors, int n, std::uint64_t seed);
Scenario mu2_scenario(double delta, ErrorProcess errors, int n, std::uint64_t seed);

}  // namespace reldev
