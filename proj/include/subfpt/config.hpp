#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfpt/accuracy.hpp"
#include "subfpt/fpt_models.hpp"

namespace subfpt {

// Parse/validation failure; message carries "file:line" for every offense.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain-text key=value config with [model], [run] and [tolerances] sections.
// Unknown keys and malformed values are rejected with their line numbers;
// every key is optional and defaults to the values below.
struct ExperimentConfig {
    FptModel model = FptModel::half_line(1.0, 1.0);
    double alpha = 0.5;
    std::uint64_t seed = 12345;
    int reps = 100000;
    std::vector<double> N_grid = {1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10};
    std::int64_t N = 100;  // N per replication for the sample command
    int k = 1;
    std::string output_path;  // empty = stdout
    int threads = 0;          // 0 = runtime default

    // survival command grid
    double t_min = 0.01;
    double t_max = 100.0;
    int t_points = 50;

    // fig2-right grid
    double x_min = -6.0;
    double x_max = 3.0;
    int x_points = 91;

    // msd-check / path construction
    std::vector<double> t_grid = {0.5, 1.0, 2.0};
    double ds = 0.004;

    // Euler-Maruyama controls
    double em_step = 1e-4;
    double s_budget = 1e7;

    Accuracy acc;
};

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical serialization of the effective config; reparsing it reproduces
// the config, and its FNV-1a digest identifies a run in output metadata.
std::string serialize_config(const ExperimentConfig& cfg);
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace subfpt
