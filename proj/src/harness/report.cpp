#include "bilvar/harness/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bilvar::harness {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckTable& c) { return !c.gating || c.pass; });
}

std::string csv_text(const CheckTable& t) {
    std::ostringstream os;
    os << "# " << t.description << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

void write_report(const SuiteResult& result, const ExperimentConfig& cfg, const RunInfo& info, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ostringstream summary;
    summary << "suite " << result.suite << " " << (result.passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : result.checks) {
        write_file(fs::path(dir) / (c.name + ".csv"), csv_text(c));
        summary << (c.gating ? (c.pass ? "PASS  " : "FAIL  ") : "INFO  ") << c.name;
        if (!c.summary.empty()) summary << "  " << c.summary;
        summary << "\n";
    }
    write_file(fs::path(dir) / "summary.txt", summary.str());

    std::ostringstream manifest;
    manifest << "[config]\n" << echo(cfg) << "\n[run]\n"
             << "started = " << info.started << "\n"
             << "seconds = " << num(info.seconds) << "\n"
             << "threads = " << info.threads << "\n"
             << "\n[versions]\n"
             << "bilvar = 1.0.0\n"
             << "compiler = " << __VERSION__ << "\n"
             << "cplusplus = " << __cplusplus << "\n"
             << "\n[checks]\n";
    for (const auto& c : result.checks) manifest << c.name << ".csv\n";
    write_file(fs::path(dir) / "manifest.txt", manifest.str());
}

}  // namespace bilvar::harness
