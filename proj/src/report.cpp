#include "reldev/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace reldev {
namespace {

nlohmann::json interval_list(const std::vector<ExtremalSet::Component>& components) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : components) list.push_back({c.lo, c.hi});
    return list;
}

nlohmann::json finite_or_inf(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

}  // namespace

nlohmann::json report_json(const AnalysisResult& result, const AnalysisOptions& options,
                           const std::string& input_label, int n, const EpochMapping* epoch) {
    nlohmann::json j;
    j["input"] = {{"source", input_label}, {"n", n}};
    j["config"] = {
        {"benchmark", options.benchmark.str()},
        {"delta", options.delta},
        {"alpha", options.alpha},
        {"test", variant_name(options.variant)},
        {"x0", options.x0},
        {"x1", options.x1},
        {"locally_stationary", options.locally_stationary},
        {"use_ell_prime", options.use_ell_prime},
        {"quantile_reps", options.quantile_reps},
        {"refine", options.refine},
        {"seed", options.seed},
    };
    j["bandwidth"] = {{"value", result.bandwidth},
                      {"method", result.bandwidth_from_cv ? "cv" : "fixed"}};
    if (result.bandwidth_from_cv) {
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& [h, mse] : result.cv_trace) {
            trace.push_back({h, std::isnan(mse) ? nlohmann::json() : nlohmann::json(mse)});
        }
        j["bandwidth"]["cv_trace"] = std::move(trace);
    }
    if (result.local_lrv) {
        const auto& lrv = *result.local_lrv;
        double lo = lrv.values.front(), hi = lrv.values.front(), mean = 0.0;
        for (double v : lrv.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mean += v;
        }
        mean /= double(lrv.values.size());
        j["sigma"] = {{"model", "locally-stationary"}, {"tau", lrv.tau},  {"m", lrv.m},
                      {"min", lo},                     {"max", hi},       {"mean", mean},
                      {"floored", lrv.floored}};
    } else {
        j["sigma"] = {{"model", "stationary"},
                      {"sigma2", result.sigma2},
                      {"block_length", result.block_length}};
    }
    const char* sign = result.dev.argmax_sign == ArgmaxSign::plus    ? "plus"
                       : result.dev.argmax_sign == ArgmaxSign::minus ? "minus"
                                                                     : "both";
    j["deviation"] = {{"sup", result.dev.sup},
                      {"interval", {result.dev.interval.lo, result.dev.interval.hi}},
                      {"g_hat", result.g_hat},
                      {"argmax_sign", sign}};
    j["extremal_set"] = {{"rho", result.rho},
                         {"measure", result.eset.measure},
                         {"intervals", interval_list(result.eset.intervals)},
                         {"plus", interval_list(result.eset.plus_intervals)},
                         {"minus", interval_list(result.eset.minus_intervals)}};
    j["test"] = {{"variant", variant_name(options.variant)},
                 {"statistic", result.outcome.statistic},
                 {"threshold", result.outcome.threshold},
                 {"reject", result.outcome.reject},
                 {"p_value", result.outcome.p_value},
                 {"sigma_hat", result.outcome.sigma_hat},
                 {"bandwidth", result.outcome.bandwidth},
                 {"ell_used", result.outcome.ell_used},
                 {"quantile_source", quantile_source_name(result.outcome.quantile_source)}};
    if (result.outcome.extremal_measure)
        j["test"]["extremal_measure"] = *result.outcome.extremal_measure;
    if (result.first_change) {
        j["first_change"] = {{"t_star", finite_or_inf(result.first_change->t_star_hat)},
                             {"delta_n", result.first_change->delta_n},
                             {"threshold", result.first_change->threshold_used}};
        if (epoch) {
            if (result.first_change->detected()) {
                const double label =
                    epoch->start +
                    std::round(result.first_change->t_star_hat * n) * epoch->cadence;
                j["first_change"]["epoch"] = label;
            } else {
                j["first_change"]["epoch"] = "inf";
            }
        }
    }
    if (!result.warnings.empty()) j["warnings"] = result.warnings;
    j["generated_at_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    return j;
}

std::string band_csv(const AnalysisResult& result) {
    std::ostringstream out;
    out.precision(12);
    out << "t,mu_tilde,band_lo,band_hi\n";
    const bool have_band = std::isfinite(result.band_halfwidth);
    for (std::size_t i = 0; i < result.curve.grid.size(); ++i) {
        out << result.curve.grid[i] << ',' << result.curve.values[i] << ',';
        if (have_band)
            out << result.curve.values[i] - result.band_halfwidth << ','
                << result.curve.values[i] + result.band_halfwidth;
        else
            out << ',';
        out << '\n';
    }
    return out.str();
}

}  // namespace reldev
