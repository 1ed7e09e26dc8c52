#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reldev/csv.hpp"
#include "reldev/pipeline.hpp"
#include "reldev/report.hpp"
#include "reldev/rng.hpp"
#include "reldev/simharness.hpp"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 3;

struct CommonArgs {
    std::string input;
    std::string output = "report.json";
    std::string band_csv_path;
    std::string benchmark = "full-mean";
    std::string test = "simulated";
    std::string bandwidth = "auto";
    std::string ell = "prime";
    double delta = 0.0;
    double alpha = 0.05;
    double x0 = 0.0;
    double x1 = 1.0;
    std::uint64_t seed = 0;
    int reps = 2000;
    int folds = 10;
    int refine = 1;
    bool locally_stationary = false;
    double delta_n_c = 2.0;
    std::optional<double> delta_n;
    std::optional<double> epoch_start;
    double epoch_cadence = 1.0;
};

void add_common_options(CLI::App* cmd, CommonArgs* args, bool needs_input) {
    auto* input = cmd->add_option("input,--input", args->input, "Input CSV (one value per row)");
    if (needs_input) input->required();
    cmd->add_option("-o,--output", args->output, "JSON report path");
    cmd->add_option("--band-csv", args->band_csv_path, "Write (t, mu_tilde, band) CSV here");
    cmd->add_option("--benchmark", args->benchmark,
                    "initial | partial-mean:<x0> | full-mean | constant:<c>");
    cmd->add_option("--delta", args->delta, "Relevance margin Delta >= 0");
    cmd->add_option("--alpha", args->alpha, "Test level");
    cmd->add_option("--test", args->test, "band | gumbel | extremal | simulated");
    cmd->add_option("--bandwidth", args->bandwidth, "'auto' (cross-validated) or a value in (0,1/2]");
    cmd->add_option("--x0", args->x0, "Left end of the deviation interval");
    cmd->add_option("--x1", args->x1, "Right end of the deviation interval");
    cmd->add_option("--seed", args->seed, "Master seed");
    cmd->add_option("--reps", args->reps, "Replicates for simulated critical values");
    cmd->add_option("--folds", args->folds, "Cross-validation folds");
    cmd->add_option("--refine", args->refine, "Grid points per data cell");
    cmd->add_flag("--locally-stationary", args->locally_stationary,
                  "Standardize by a time-varying noise scale");
    cmd->add_option("--ell", args->ell, "Scaling base for band/gumbel tests: prime | interval");
    cmd->add_option("--delta-n", [args](const std::vector<std::string>& v) {
        args->delta_n = std::stod(v[0]);
        return true;
    }, "First-change margin delta_n (default: rate rule)");
    cmd->add_option("--delta-n-c", args->delta_n_c, "Inflation factor of the delta_n rate rule");
    cmd->add_option("--epoch-start", [args](const std::vector<std::string>& v) {
        args->epoch_start = std::stod(v[0]);
        return true;
    }, "Calendar label of the first observation");
    cmd->add_option("--epoch-cadence", args->epoch_cadence, "Calendar units per observation");
    cmd->set_config("--config", "", "Config file with key=value lines (flags override)");
}

reldev::AnalysisOptions to_options(const CommonArgs& args, bool first_change) {
    reldev::AnalysisOptions opts;
    opts.benchmark = reldev::BenchmarkSpec::parse(args.benchmark);
    opts.delta = args.delta;
    opts.alpha = args.alpha;
    opts.variant = reldev::parse_variant(args.test);
    opts.x0 = args.x0;
    opts.x1 = args.x1;
    if (args.bandwidth != "auto") opts.bandwidth = std::stod(args.bandwidth);
    opts.cv_folds = args.folds;
    opts.refine = args.refine;
    opts.use_ell_prime = args.ell != "interval";
    opts.quantile_reps = args.reps;
    opts.seed = args.seed;
    opts.locally_stationary = args.locally_stationary;
    opts.compute_first_change = first_change;
    opts.first_change_delta_n = args.delta_n;
    opts.delta_n_c = args.delta_n_c;
    return opts;
}

int run_analysis_command(const CommonArgs& args, bool first_change, bool force_band) {
    CommonArgs effective = args;
    if (force_band) effective.test = "band";
    const reldev::TimeSeries series = reldev::ingest_csv(effective.input);
    const reldev::KernelSpec kernel = reldev::make_kernel("quartic");
    const reldev::AnalysisOptions opts = to_options(effective, first_change);
    const reldev::AnalysisResult result = reldev::analyze(series, kernel, opts);

    std::optional<reldev::EpochMapping> epoch;
    if (effective.epoch_start) epoch = reldev::EpochMapping{*effective.epoch_start, effective.epoch_cadence};
    const nlohmann::json report = reldev::report_json(result, opts, effective.input, series.n(),
                                                      epoch ? &*epoch : nullptr);
    {
        std::ofstream out(effective.output);
        if (!out) throw std::runtime_error("cannot write '" + effective.output + "'");
        out << report.dump(2) << '\n';
    }
    if (!effective.band_csv_path.empty() || force_band) {
        const std::string path =
            effective.band_csv_path.empty() ? "band.csv" : effective.band_csv_path;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << reldev::band_csv(result);
    }

    const auto& t = result.outcome;
    std::cout << (t.reject ? "reject" : "accept") << " H0: sup deviation <= " << opts.delta
              << "  (statistic " << t.statistic << (t.reject ? " > " : " <= ") << "threshold "
              << t.threshold << ", p = " << t.p_value << ", h = " << t.bandwidth << ")\n";
    if (first_change && result.first_change) {
        std::cout << "first relevant deviation: ";
        if (result.first_change->detected()) {
            std::cout << result.first_change->t_star_hat;
            if (epoch)
                std::cout << "  (epoch "
                          << epoch->start +
                                 std::round(result.first_change->t_star_hat * series.n()) *
                                     epoch->cadence
                          << ")";
        } else {
            std::cout << "none (inf)";
        }
        std::cout << '\n';
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "report: " << effective.output << '\n';
    return t.reject ? kExitReject : kExitAccept;
}

int run_cv_command(const CommonArgs& args) {
    const reldev::TimeSeries series = reldev::ingest_csv(args.input);
    const reldev::KernelSpec kernel = reldev::make_kernel("quartic");
    reldev::CvOptions cv;
    cv.folds = args.folds;
    cv.seed = reldev::derive_seed(args.seed, 101);
    const reldev::CvResult result = reldev::cv_bandwidth(series, kernel, cv);
    std::cout << result.bandwidth << '\n';
    return kExitAccept;
}

struct SimulateArgs {
    int table = 2;
    std::string panel = "A";
    int n = 500;
    int runs = 1000;
    std::uint64_t seed = 0;
    int reps = 2000;
    std::optional<double> param;
    std::vector<std::string> tests = {"band", "gumbel", "simulated"};
};

int run_simulate_command(const SimulateArgs& args) {
    reldev::ErrorProcess errors;
    if (args.panel == "A")
        errors = reldev::ErrorProcess::iid;
    else if (args.panel == "B")
        errors = reldev::ErrorProcess::ma;
    else if (args.panel == "C")
        errors = reldev::ErrorProcess::ar;
    else
        throw std::runtime_error("panel must be A, B or C");

    std::vector<double> params;
    if (args.param) {
        params = {*args.param};
    } else if (args.table == 1) {
        params = {1.0, 1.5, 128.0 / 81.0, 2.0, 2.5, 3.0};
    } else {
        params = {1.0, 1.5, 1.75, 2.0, 2.25};
    }

    std::cout << (args.table == 1 ? "a" : "delta") << ",d_inf_minus_delta";
    for (const auto& name : args.tests) std::cout << ',' << name;
    std::cout << '\n';
    for (std::size_t row = 0; row < params.size(); ++row) {
        reldev::Scenario scenario =
            args.table == 1
                ? reldev::mu1_scenario(params[row], errors, args.n,
                                       reldev::derive_seed(args.seed, row))
                : reldev::mu2_scenario(params[row], errors, args.n,
                                       reldev::derive_seed(args.seed, row));
        scenario.quantile_reps = args.reps;
        std::cout << params[row] << ','
                  << reldev::scenario_d_inf(scenario) - scenario.delta;
        for (const auto& name : args.tests) {
            scenario.test_variant = reldev::parse_variant(name);
            const reldev::McResult mc = reldev::run_mc(scenario, args.runs);
            std::cout << ',' << 100.0 * mc.rate;
            if (mc.failures > 0)
                std::cerr << "warning: " << mc.failures << " failed runs counted as non-rejections\n";
        }
        std::cout << '\n';
    }
    return kExitAccept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relevant-deviation testing for gradually varying means"};
    app.require_subcommand(1);

    CommonArgs test_args, band_args, first_args, cv_args;
    SimulateArgs sim_args;

    auto* test_cmd = app.add_subcommand("test", "Test H0: sup|mu - g| <= delta");
    add_common_options(test_cmd, &test_args, true);

    auto* band_cmd =
        app.add_subcommand("band", "Simultaneous confidence band and the band test");
    add_common_options(band_cmd, &band_args, true);

    auto* first_cmd =
        app.add_subcommand("first-change", "Estimate the first relevant deviation time");
    add_common_options(first_cmd, &first_args, true);

    auto* cv_cmd = app.add_subcommand("cv-bandwidth", "Cross-validated bandwidth only");
    add_common_options(cv_cmd, &cv_args, true);

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo rejection-rate table rows");
    sim_cmd->add_option("--table", sim_args.table, "1 (bump family) or 2 (plateau family)")
        ->check(CLI::IsMember({1, 2}));
    sim_cmd->add_option("--panel", sim_args.panel, "A (iid) | B (ma) | C (ar)");
    sim_cmd->add_option("--n", sim_args.n, "Sample size per run");
    sim_cmd->add_option("--runs", sim_args.runs, "Monte Carlo runs per cell");
    sim_cmd->add_option("--seed", sim_args.seed, "Master seed");
    sim_cmd->add_option("--reps", sim_args.reps, "Replicates for simulated critical values");
    sim_cmd->add_option("--param", [&sim_args](const std::vector<std::string>& v) {
        sim_args.param = std::stod(v[0]);
        return true;
    }, "Single parameter value instead of the full column");
    sim_cmd->add_option("--tests", sim_args.tests, "Which tests to tabulate");

    CLI11_PARSE(app, argc, argv);

    try {
        if (test_cmd->parsed()) return run_analysis_command(test_args, false, false);
        if (band_cmd->parsed()) return run_analysis_command(band_args, false, true);
        if (first_cmd->parsed()) return run_analysis_command(first_args, true, false);
        if (cv_cmd->parsed()) return run_cv_command(cv_args);
        if (sim_cmd->parsed()) return run_simulate_command(sim_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
