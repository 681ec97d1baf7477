#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "germforge/decisions.hpp"
#include "germforge/modulus.hpp"
#include "germforge/series.hpp"

namespace germforge {

using nlohmann::json;

// Run-wide configuration: flags > config file > defaults.
struct RunConfig {
    std::size_t order = 0;     // jet order override (0 = keep input order)
    double zero_floor = 1e-9;  // coefficient zero threshold for synthetic tables
    double newton_tol = 1e-12;
    double abel_tol = 1e-6;
    double quad_height = 2.0;
    int quad_samples = 256;
    int n_max = 12;
    double delta = 0.0; // petal radius (0 = auto)
    long iteration_cap = 100000;
    std::string out_path;
    std::string format = "text"; // text | json
};

json config_to_json(const RunConfig& cfg);
ModulusPipelineConfig to_pipeline_config(const RunConfig& cfg);

// Germ file: {"kind": "...", "order": N, "coefficients": [[re, im], ...]}
TruncatedSeries parse_germ_json(const json& j);
json germ_to_json(const TruncatedSeries& s);
TruncatedSeries parse_germ_file(const std::string& path);
void write_germ_file(const std::string& path, const TruncatedSeries& s);

// Modulus file: {"kind", "k", "b": [re, im], "noise_floor", "n_max",
//   "floor_model" (optional), "harmonic_floors" (optional),
//   "tables": [{"j", "const": [re, im], "coeffs": [{"n", "c": [re, im]}]}]}
ModulusDescriptor parse_modulus_json(const json& j);
json modulus_to_json(const ModulusDescriptor& m);
ModulusDescriptor parse_modulus_file(const std::string& path);
void write_modulus_file(const std::string& path, const ModulusDescriptor& m);

// report rendering
json decision_to_json(const DecisionReport& rep);
void render_report(std::ostream& os, const json& report, const std::string& format);

// aborts with a stage trace if any number in the report is not finite
void ensure_finite_json(const json& j, const std::string& stage);

bool looks_like_modulus_file(const json& j);

} // namespace germforge
