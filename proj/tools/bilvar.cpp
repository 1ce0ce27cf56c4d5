#include <chrono>
#include <ctime>
#include <exception>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bilvar/harness/config.hpp"
#include "bilvar/harness/report.hpp"
#include "bilvar/harness/suites.hpp"
#include "bilvar/parallel.hpp"

namespace {

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    namespace h = bilvar::harness;
    CLI::App app{"bilvar: averaging-operator experiments"};
    app.require_subcommand(1);

    std::string suite, config_path, out;
    std::uint64_t seed = 0;
    int trials = 0, grid = 0;
    std::vector<std::string> sets;
    auto* run = app.add_subcommand("run", "run one suite and write CSV tables");
    run->add_option("suite", suite, "suite name")->required();
    run->add_option("--config,-c", config_path, "flat key = value file");
    run->add_option("--seed", seed, "override the seed");
    run->add_option("--out,-o", out, "output directory");
    run->add_option("--trials", trials, "override the trial count");
    run->add_option("--grid", grid, "single grid size");
    run->add_option("--set", sets, "extra key=value overrides");

    auto* list = app.add_subcommand("list", "print suite names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list->parsed()) {
        for (const auto& s : h::suite_names()) std::cout << s << "\n";
        return 0;
    }

    h::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = h::load_config(config_path);
        if (!cfg.suite.empty() && cfg.suite != suite)
            throw h::ConfigError("config is for suite '" + cfg.suite + "', not '" + suite + "'");
        cfg.suite = suite;
        if (run->count("--seed")) cfg.seed = seed;
        if (run->count("--trials")) cfg.trials = trials;
        if (run->count("--grid")) cfg.grids = {grid};
        if (!out.empty()) cfg.out = out;
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw h::ConfigError("--set expects key=value, got '" + kv + "'");
            h::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }
        h::validate(cfg);
    } catch (const h::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        h::RunInfo info;
        info.started = utc_now();
        info.threads = bilvar::thread_count();
        const auto t0 = std::chrono::steady_clock::now();
        const h::SuiteResult res = h::run_suite(cfg);
        info.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        h::write_report(res, cfg, info, cfg.out);
        for (const auto& c : res.checks) {
            std::cout << (c.gating ? (c.pass ? "PASS  " : "FAIL  ") : "INFO  ") << c.name;
            if (!c.summary.empty()) std::cout << "  " << c.summary;
            std::cout << "\n";
        }
        std::cout << "suite " << res.suite << " " << (res.passed() ? "PASS" : "FAIL") << " -> " << cfg.out << "\n";
        return res.passed() ? 0 : 1;
    } catch (const h::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
