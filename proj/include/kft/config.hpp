#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kft {

// Every scalar the method fixes or leaves open. Defaults are the paper-fixed
// operating point (gamma, base_score, stepsize, admm_iters) plus baseline
// conventions for the rest.
struct TrackerConfig {
    double lambda = 1e-3;
    double gamma = 10.0;
    double base_score = 0.28;   // context score scale
    int stepsize = 8;           // keyfilter refresh period T
    int context_patches = 8;    // P
    double mu0 = 1.0;
    double beta = 10.0;
    double mu_max = 1e3;
    int admm_iters = 2;
    int cell_size = 4;
    double padding = 2.0;       // search region, linear factor per side
    int max_cells = 64;         // model grid cap per dimension
    int num_scales = 5;
    double scale_step = 1.02;
    double scale_penalty = 0.995;
    double learning_rate = 0.013;  // appearance model eta
    double output_sigma_factor = 1.0 / 16.0;
    bool window = true;
    std::vector<std::string> channels = {"gray", "fhog", "cn"};
    std::string color_table;    // empty = default resolution order

    bool operator==(const TrackerConfig&) const = default;
};

// Flat key=value text, one entry per line, '#' comments. Unknown keys are an
// error so manifests stay trustworthy.
TrackerConfig parse_config_text(const std::string& text);
TrackerConfig load_config(const std::filesystem::path& file);
std::string config_to_text(const TrackerConfig& config);

// Applies a single "key=value" override (CLI flags reuse the file syntax).
void apply_override(TrackerConfig& config, const std::string& key, const std::string& value);

}  // namespace kft
