#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bilvar::harness {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& suite_names();

struct ExperimentConfig {
    std::string suite;
    std::string body = "ball";       // ball, cube, gamma
    std::vector<double> gamma;       // row-major 2d x 2d, for body = gamma
    int d = 1;
    std::vector<int> grids{64};      // cells per unit length; refinement list for sweeps
    double mesh = 0.0;               // 0: 1 / grid
    double p1 = 2.0;
    double p2 = 2.0;
    double p = 1.0;
    double q = 3.0;
    double l = 1.5;
    double epsilon = 1.0;
    double s = 10.0;
    std::string norm = "strong";     // strong, weak, bmo
    std::string families = "mixed";  // mixed, indicators, trig, spikes
    int k_min = -6;
    int k_max = 1;
    int per_octave = 4;
    int n = 4;                       // counterexample size / martingale level
    int trials = 100;
    std::uint64_t seed = 1;
    std::string out = "out";
    double ceiling = 0.0;            // 0: none
    double trend_limit = 0.25;

    double mesh_for(int grid) const { return mesh > 0.0 ? mesh : 1.0 / grid; }
};

/// Sets one key from its text value; unknown keys and malformed values throw.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` lines; `#` starts a comment.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Rejects inconsistent settings before any computation.
void validate(const ExperimentConfig& cfg);

/// One `key = value` line per setting, in a fixed order.
std::string echo(const ExperimentConfig& cfg);

}  // namespace bilvar::harness
