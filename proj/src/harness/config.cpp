#include "bilvar/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bilvar::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "infinity") return INFINITY;
    // "a/b" for exponents such as 2/3
    const auto slash = v.find('/');
    if (slash != std::string::npos) return to_double(key, v.substr(0, slash)) / to_double(key, v.substr(slash + 1));
    double out = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("bad number for " + key + ": '" + v + "'");
    return out;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
    Int out = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("bad integer for " + key + ": '" + v + "'");
    return out;
}

template <class T, class Conv>
std::vector<T> to_list(const std::string& v, Conv conv) {
    std::vector<T> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(conv(item));
    }
    return out;
}

std::string fmt(double v) {
    if (std::isinf(v)) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
    return std::any_of(options.begin(), options.end(), [&](const char* o) { return v == o; });
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"identities", "domination", "carleson", "cz", "square",
                                                "counterexample", "interp", "ergodic", "sweep"};
    return names;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "suite") cfg.suite = v;
    else if (key == "body") cfg.body = v;
    else if (key == "gamma") cfg.gamma = to_list<double>(v, [&](const std::string& x) { return to_double(key, x); });
    else if (key == "d") cfg.d = to_int<int>(key, v);
    else if (key == "grid") cfg.grids = to_list<int>(v, [&](const std::string& x) { return to_int<int>(key, x); });
    else if (key == "mesh") cfg.mesh = to_double(key, v);
    else if (key == "p1") cfg.p1 = to_double(key, v);
    else if (key == "p2") cfg.p2 = to_double(key, v);
    else if (key == "p") cfg.p = to_double(key, v);
    else if (key == "q") cfg.q = to_double(key, v);
    else if (key == "l") cfg.l = to_double(key, v);
    else if (key == "epsilon") cfg.epsilon = to_double(key, v);
    else if (key == "s") cfg.s = to_double(key, v);
    else if (key == "norm") cfg.norm = v;
    else if (key == "families") cfg.families = v;
    else if (key == "k_min") cfg.k_min = to_int<int>(key, v);
    else if (key == "k_max") cfg.k_max = to_int<int>(key, v);
    else if (key == "per_octave") cfg.per_octave = to_int<int>(key, v);
    else if (key == "n") cfg.n = to_int<int>(key, v);
    else if (key == "trials") cfg.trials = to_int<int>(key, v);
    else if (key == "seed") cfg.seed = to_int<std::uint64_t>(key, v);
    else if (key == "out") cfg.out = v;
    else if (key == "ceiling") cfg.ceiling = to_double(key, v);
    else if (key == "trend_limit") cfg.trend_limit = to_double(key, v);
    else throw ConfigError("unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in, path);
}

void validate(const ExperimentConfig& cfg) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
        throw ConfigError("unknown suite '" + cfg.suite + "'");
    if (cfg.d != 1 && cfg.d != 2) throw ConfigError("d must be 1 or 2");
    if (!one_of(cfg.body, {"ball", "cube", "gamma"})) throw ConfigError("body must be ball, cube or gamma");
    if (cfg.body == "gamma" && cfg.gamma.size() != static_cast<std::size_t>(4 * cfg.d * cfg.d))
        throw ConfigError("gamma needs 4 d^2 entries");
    if (cfg.grids.empty()) throw ConfigError("empty grid: no grid size given");
    for (int g : cfg.grids)
        if (g < 1) throw ConfigError("empty grid: grid sizes must be positive");
    if (cfg.k_min > cfg.k_max || cfg.per_octave < 1) throw ConfigError("empty grid: no time scales (need k_min <= k_max, per_octave >= 1)");
    if (cfg.mesh < 0.0) throw ConfigError("mesh must be positive");
    if (cfg.trials < 1) throw ConfigError("trials must be positive");
    if (!(cfg.p1 >= 1.0) || !(cfg.p2 >= 1.0)) throw ConfigError("p1 and p2 must be at least 1");
    if (!(cfg.p > 0.0)) throw ConfigError("p must be positive");
    const double gap = 1.0 / cfg.p - (1.0 / cfg.p1 + 1.0 / cfg.p2);
    if (std::abs(gap) > 1e-12) throw ConfigError("exponents must satisfy 1/p = 1/p1 + 1/p2");
    if (!(cfg.q > 1.0) || cfg.q > 16.0) throw ConfigError("q must lie in (1, 16]");
    if ((cfg.suite == "sweep" || cfg.suite == "ergodic") && !(cfg.q > 2.0))
        throw ConfigError("q must exceed 2 for the boundedness suites");
    if (!(cfg.l > 1.0 && cfg.l < 2.0)) throw ConfigError("l must lie in (1, 2)");
    if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(cfg.s > 1.0)) throw ConfigError("s must exceed 1");
    if (!one_of(cfg.norm, {"strong", "weak", "bmo"})) throw ConfigError("norm must be strong, weak or bmo");
    if (!one_of(cfg.families, {"mixed", "indicators", "trig", "spikes"}))
        throw ConfigError("families must be mixed, indicators, trig or spikes");
    if (cfg.n < 0) throw ConfigError("n must be nonnegative");
    if (cfg.ceiling < 0.0) throw ConfigError("ceiling must be nonnegative");
    if (!(cfg.trend_limit > 0.0)) throw ConfigError("trend_limit must be positive");
    if (cfg.suite == "sweep" && cfg.d == 2)
        for (int g : cfg.grids)
            if (std::ldexp(static_cast<double>(g), std::max(cfg.k_max, 0)) > 16.0)
                throw ConfigError("d = 2 sweep too large: need grid * 2^max(k_max, 0) <= 16");
}

std::string echo(const ExperimentConfig& cfg) {
    std::ostringstream os;
    const auto list = [](const auto& v) {
        std::ostringstream s;
        for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << fmt(static_cast<double>(v[i]));
        return s.str();
    };
    os << "suite = " << cfg.suite << "\n"
       << "body = " << cfg.body << "\n";
    if (!cfg.gamma.empty()) os << "gamma = " << list(cfg.gamma) << "\n";
    os << "d = " << cfg.d << "\n"
       << "grid = " << list(cfg.grids) << "\n"
       << "mesh = " << fmt(cfg.mesh) << "\n"
       << "p1 = " << fmt(cfg.p1) << "\n"
       << "p2 = " << fmt(cfg.p2) << "\n"
       << "p = " << fmt(cfg.p) << "\n"
       << "q = " << fmt(cfg.q) << "\n"
       << "l = " << fmt(cfg.l) << "\n"
       << "epsilon = " << fmt(cfg.epsilon) << "\n"
       << "s = " << fmt(cfg.s) << "\n"
       << "norm = " << cfg.norm << "\n"
       << "families = " << cfg.families << "\n"
       << "k_min = " << cfg.k_min << "\n"
       << "k_max = " << cfg.k_max << "\n"
       << "per_octave = " << cfg.per_octave << "\n"
       << "n = " << cfg.n << "\n"
       << "trials = " << cfg.trials << "\n"
       << "seed = " << cfg.seed << "\n"
       << "out = " << cfg.out << "\n"
       << "ceiling = " << fmt(cfg.ceiling) << "\n"
       << "trend_limit = " << fmt(cfg.trend_limit) << "\n";
    return os.str();
}

}  // namespace bilvar::harness
