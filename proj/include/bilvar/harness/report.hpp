#pragma once

#include <string>
#include <vector>

#include "bilvar/harness/config.hpp"

namespace bilvar::harness {

/// Shortest text that reads back to the same double; inf and nan spelled out.
std::string num(double v);

/// One CSV per check: a `#` line describing it, the column header, rows.
struct CheckTable {
    CheckTable() = default;
    CheckTable(std::string n, std::string desc, std::vector<std::string> cols)
        : name(std::move(n)), description(std::move(desc)), columns(std::move(cols)) {}

    std::string name;
    std::string description;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// Gating checks decide the exit status; tracking tables only report.
    bool gating = true;
    bool pass = true;
    std::string summary;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckTable> checks;
    bool passed() const;
};

struct RunInfo {
    double seconds = 0.0;
    unsigned threads = 1;
    std::string started;
};

std::string csv_text(const CheckTable& t);

/// Writes <dir>/<check>.csv for each check, <dir>/summary.txt (pass/fail per
/// check, deterministic) and <dir>/manifest.txt (config echo, versions,
/// timing).
void write_report(const SuiteResult& result, const ExperimentConfig& cfg, const RunInfo& info, const std::string& dir);

}  // namespace bilvar::harness
