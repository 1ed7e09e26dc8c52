#include "reldev/simharness.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "reldev/errors.hpp"
#include "reldev/quadrature.hpp"
#include "reldev/rng.hpp"

namespace reldev {
namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt5 = 2.23606797749979;
constexpr int kArBurnIn = 1000;

double mu1(double a, double x) {
    double v = 10.0 + 0.5 * std::sin(8.0 * kPi * x);
    if (x > 0.25) {
        const double s = x - 0.25;
        v += a * s * s;
    }
    return v;
}

// Plateau at 9, smooth sine ramp, plateau at 12; continuous at the joins.
double mu2(double x) {
    if (x <= 0.25) return 9.0;
    if (x <= 0.75) return 10.5 + 1.5 * std::sin(2.0 * kPi * (x - 0.5));
    return 12.0;
}

}  // namespace

double scenario_mean(const Scenario& scenario, double t) {
    switch (scenario.mean) {
        case Scenario::Mean::mu1: return mu1(scenario.mu1_a, t);
        case Scenario::Mean::mu2: return mu2(t);
        case Scenario::Mean::constant: return scenario.const_value;
        case Scenario::Mean::custom: return scenario.custom(t);
    }
    throw std::invalid_argument("unhandled scenario mean");
}

double scenario_true_g(const Scenario& scenario) {
    auto mu = [&](double t) { return scenario_mean(scenario, t); };
    switch (scenario.benchmark.kind) {
        case BenchmarkSpec::Kind::constant:
            return scenario.benchmark.value;
        case BenchmarkSpec::Kind::full_mean:
            return integrate(mu, 0.0, 1.0, 1e-10);
        case BenchmarkSpec::Kind::partial_mean:
            return integrate(mu, 0.0, scenario.benchmark.x0, 1e-10) / scenario.benchmark.x0;
        case BenchmarkSpec::Kind::initial_value:
            return mu(0.0);
    }
    throw std::invalid_argument("unhandled benchmark kind");
}

double scenario_d_inf(const Scenario& scenario) {
    const double g = scenario_true_g(scenario);
    const int cells = 100000;
    double sup = 0.0;
    for (int i = 0; i <= cells; ++i) {
        const double t = scenario.x0 + (scenario.x1 - scenario.x0) * double(i) / cells;
        sup = std::max(sup, std::abs(scenario_mean(scenario, t) - g));
    }
    return sup;
}

TimeSeries generate(const Scenario& scenario, std::uint64_t seed) {
    const int n = scenario.n;
    if (n < kMinSeriesLength)
        throw too_few_observations(static_cast<std::size_t>(n), kMinSeriesLength);
    auto rng = make_rng(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<double> eps(n);
    switch (scenario.errors) {
        case ErrorProcess::iid:
            for (int i = 0; i < n; ++i) eps[i] = 0.5 * normal(rng);
            break;
        case ErrorProcess::ma: {
            double prev = normal(rng);
            for (int i = 0; i < n; ++i) {
                const double cur = normal(rng);
                eps[i] = (cur + 0.5 * prev) / kSqrt5;
                prev = cur;
            }
            break;
        }
        case ErrorProcess::ar: {
            // eps_i = (sqrt(3)/4) eta_i + (1/2) eps_{i-1}; marginal variance
            // (3/16) / (1 - 1/4) = 1/4.
            double state = 0.0;
            for (int i = 0; i < kArBurnIn; ++i)
                state = kSqrt3 / 4.0 * normal(rng) + 0.5 * state;
            for (int i = 0; i < n; ++i) {
                state = kSqrt3 / 4.0 * normal(rng) + 0.5 * state;
                eps[i] = state;
            }
            break;
        }
    }
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i)
        values[i] = scenario_mean(scenario, double(i + 1) / n) + eps[i];
    return TimeSeries(std::move(values));
}

AnalysisResult run_single(const Scenario& scenario, std::uint64_t run_seed) {
    const KernelSpec kernel = make_kernel("quartic");
    AnalysisOptions opts;
    opts.benchmark = scenario.benchmark;
    opts.delta = scenario.delta;
    opts.alpha = scenario.alpha;
    opts.variant = scenario.test_variant;
    opts.x0 = scenario.x0;
    opts.x1 = scenario.x1;
    opts.cv_folds = scenario.cv_folds;
    opts.quantile_reps = scenario.quantile_reps;
    opts.seed = run_seed;
    const TimeSeries series = generate(scenario, derive_seed(run_seed, 0));
    return analyze(series, kernel, opts);
}

McResult run_mc(const Scenario& scenario, int runs, exec policy) {
    if (runs < 1) throw std::invalid_argument("need at least one run");
    const KernelSpec kernel = make_kernel("quartic");

    AnalysisOptions base;
    base.benchmark = scenario.benchmark;
    base.delta = scenario.delta;
    base.alpha = scenario.alpha;
    base.variant = scenario.test_variant;
    base.x0 = scenario.x0;
    base.x1 = scenario.x1;
    base.cv_folds = scenario.cv_folds;
    base.quantile_reps = scenario.quantile_reps;

    std::vector<unsigned char> reject(runs, 0), failed(runs, 0);
    parallel_for_dynamic(runs, policy, [&](std::int64_t run) {
        const std::uint64_t run_seed = derive_seed(scenario.seed, static_cast<std::uint64_t>(run));
        AnalysisOptions opts = base;
        opts.seed = run_seed;
        try {
            const TimeSeries series = generate(scenario, derive_seed(run_seed, 0));
            reject[run] = analyze(series, kernel, opts).outcome.reject;
        } catch (const std::exception&) {
            failed[run] = 1;
        }
    });

    McResult result;
    result.runs = runs;
    for (int i = 0; i < runs; ++i) {
        result.rejections += reject[i];
        result.failures += failed[i];
    }
    result.rate = double(result.rejections) / double(runs);
    result.se = std::sqrt(result.rate * (1.0 - result.rate) / double(runs));
    return result;
}

Scenario mu1_scenario(double a, ErrorProcess errors, int n, std::uint64_t seed) {
    Scenario s;
    s.mean = Scenario::Mean::mu1;
    s.mu1_a = a;
    s.errors = errors;
    s.n = n;
    s.delta = 1.0;
    s.x0 = 0.25;
    s.x1 = 1.0;
    s.benchmark.kind = BenchmarkSpec::Kind::partial_mean;
    s.benchmark.x0 = 0.25;
    s.seed = seed;
    return s;
}

Scenario mu2_scenario(double delta, ErrorProcess errors, int n, std::uint64_t seed) {
    Scenario s;
    s.mean = Scenario::Mean::mu2;
    s.errors = errors;
    s.n = n;
    s.delta = delta;
    s.x0 = 0.0;
    s.x1 = 1.0;
    s.benchmark.kind = BenchmarkSpec::Kind::constant;
    s.benchmark.value = 10.0;
    s.seed = seed;
    return s;
}

}  // namespace reldev
