#pragma once

#include <string>
#include <vector>

#include "bilvar/convex_body.hpp"
#include "bilvar/harness/config.hpp"
#include "bilvar/harness/report.hpp"

namespace bilvar::harness {

/// The configured body, normalized.
ConvexBody make_body(const ExperimentConfig& cfg);

struct TrialRatio {
    int trial = 0;
    std::string family;
    int grid = 0;
    double numerator = 0.0;    // norm of V_q of the averages
    double denominator = 0.0;  // ||f1||_{p1} ||f2||_{p2}
    double ratio = 0.0;
};

struct GridSummary {
    int grid = 0;
    double max = 0.0;
    double mean = 0.0;
};

struct RatioReport {
    std::string suite;
    std::vector<TrialRatio> trials;  // trial-major, grids in config order
    std::vector<GridSummary> per_grid;
    double max = 0.0;
    double mean = 0.0;
    /// max over grids of the per-grid max, divided by the min, minus 1.
    double trend = 0.0;
    double ceiling = 0.0;
    bool within_ceiling = true;
    bool stable = true;
    bool pass() const { return within_ceiling && stable; }
};

/// For each trial draws f1, f2 on [0, 1)^d (same functions at every grid
/// size), takes V_q over t in 2^{k + j / per_octave} (continuum scale) at
/// every grid point where an average can be nonzero, measures it in the
/// configured norm and divides by ||f1||_{p1} ||f2||_{p2}.
RatioReport run_norm_sweep(const ExperimentConfig& cfg);

/// Runs the named suite; the config must be valid.
SuiteResult run_suite(const ExperimentConfig& cfg);

}  // namespace bilvar::harness
