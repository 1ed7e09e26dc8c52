#pragma once

#include <string>

#include "json.hpp"
#include "reldev/pipeline.hpp"

namespace reldev {

// Optional mapping of [0,1]-time to calendar labels: label = start +
// round(t * n) * cadence.
struct EpochMapping {
    double start = 0.0;
    double cadence = 1.0;
};

// Full machine-readable record of one analysis. Infinity serializes as the
// string "inf". The "generated_at_unix" field is the only non-deterministic
// entry for a fixed configuration and seed.
nlohmann::json report_json(const AnalysisResult& result, const AnalysisOptions& options,
                           const std::string& input_label, int n,
                           const EpochMapping* epoch = nullptr);

// Plot-ready table: t, mu_tilde(t), simultaneous band bounds.
std::string band_csv(const AnalysisResult& result);

}  // namespace reldev
