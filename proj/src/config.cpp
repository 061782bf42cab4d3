#include "aer/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace aer {

namespace {

using boost::property_tree::ptree;

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
    return s;
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    }
}

long long to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        long long d = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Expr to_expr(const std::string& v, const std::string& key) {
    try {
        return parse(v);
    } catch (const ParseError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

void apply_problem(ProblemSpec& p, const std::string& key, const std::string& v) {
    const std::string k = "problem." + key;
    if (key == "mu") p.mu = to_double(v, k);
    else if (key == "k") p.k = to_double(v, k);
    else if (key == "x0") p.x0 = to_double(v, k);
    else if (key == "x1") p.x1 = to_double(v, k);
    else if (key == "a") p.a = to_double(v, k);
    else if (key == "T") p.T = to_double(v, k);
    else if (key == "u_minus_a") p.u_minus_a = to_expr(v, k);
    else if (key == "u_plus_a") p.u_plus_a = to_expr(v, k);
    else if (key == "f") p.f = to_expr(v, k);
    else if (key == "h0_star") p.h0_star = to_double(v, k);
    else if (key == "t0") p.t0 = to_double(v, k);
    else if (key == "source_extension") {
        if (v == "periodic") p.extension = SourceExtension::periodic;
        else if (v == "analytic") p.extension = SourceExtension::analytic;
        else throw ConfigError("key '" + k + "': expected periodic or analytic");
    } else throw ConfigError("unknown key '" + k + "'");
}

InitialKind to_initial(const std::string& v, const std::string& k) {
    if (v == "tanh") return InitialKind::tanh;
    if (v == "asymptotic") return InitialKind::asymptotic;
    throw ConfigError("key '" + k + "': expected tanh or asymptotic");
}

void apply_forward(ForwardBlock& f, const std::string& key, const std::string& v) {
    const std::string k = "forward." + key;
    if (key == "n") f.n = static_cast<int>(to_int(v, k));
    else if (key == "m") f.m = static_cast<int>(to_int(v, k));
    else if (key == "cfl") f.cfl = to_double(v, k);
    else if (key == "t_end") f.t_end = to_double(v, k);
    else if (key == "initial") f.initial = to_initial(v, k);
    else if (key == "snapshot_times") {
        f.snapshot_times.clear();
        for (const auto& s : split_list(v)) f.snapshot_times.push_back(to_double(s, k));
    } else throw ConfigError("unknown key '" + k + "'");
}

void apply_asymptote(AsymptoteBlock& a, const std::string& key, const std::string& v) {
    const std::string k = "asymptote." + key;
    if (key == "n") a.n = static_cast<int>(to_int(v, k));
    else if (key == "m") a.m = static_cast<int>(to_int(v, k));
    else if (key == "nt") a.nt = static_cast<int>(to_int(v, k));
    else if (key == "first_order") a.first_order = to_bool(v, k);
    else throw ConfigError("unknown key '" + k + "'");
}

void apply_inverse(PipelineConfig& c, const std::string& key, const std::string& v) {
    const std::string k = "inverse." + key;
    if (key == "n") c.n = static_cast<int>(to_int(v, k));
    else if (key == "m") c.m = static_cast<int>(to_int(v, k));
    else if (key == "refine") c.refine = static_cast<int>(to_int(v, k));
    else if (key == "cfl") c.cfl = to_double(v, k);
    else if (key == "initial") c.initial = to_initial(v, k);
    else if (key == "front_nt") c.front_nt = static_cast<int>(to_int(v, k));
    else if (key == "delta") c.delta = to_double(v, k);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_int(v, k));
    else if (key == "noise") {
        if (v == "uniform") c.noise = NoiseKind::uniform;
        else if (v == "gaussian") c.noise = NoiseKind::gaussian;
        else throw ConfigError("key '" + k + "': expected uniform or gaussian");
    } else if (key == "mask") {
        if (v != "global") throw ConfigError("key '" + k + "': only the global band is supported");
    } else if (key == "gradient_measured") c.gradient_measured = to_bool(v, k);
    else if (key == "smoothing_rule") {
        if (v == "delta4") c.smoothing.rule = SmoothingRule::delta4;
        else if (v == "noise_level") c.smoothing.rule = SmoothingRule::noise_level;
        else if (v == "fixed") c.smoothing.rule = SmoothingRule::fixed;
        else throw ConfigError("key '" + k + "': expected delta4, noise_level or fixed");
    } else if (key == "smoothing_tolerance") c.smoothing.tolerance = to_double(v, k);
    else if (key == "smoothing_eps") c.smoothing.fixed_eps = to_double(v, k);
    else throw ConfigError("unknown key '" + k + "'");
}

void apply_study(StudyBlock& s, const std::string& key, const std::string& v) {
    const std::string k = "study." + key;
    auto list = split_list(v);
    if (key == "delta") {
        s.delta.clear();
        for (const auto& x : list) s.delta.push_back(to_double(x, k));
    } else if (key == "mu") {
        s.mu.clear();
        for (const auto& x : list) s.mu.push_back(to_double(x, k));
    } else if (key == "grid") {
        s.grid.clear();
        for (const auto& x : list) s.grid.push_back(static_cast<int>(to_int(x, k)));
    } else if (key == "seeds") {
        s.seeds.clear();
        for (const auto& x : list) s.seeds.push_back(static_cast<std::uint64_t>(to_int(x, k)));
    } else if (key == "mu_pipeline") s.mu_pipeline = to_bool(v, k);
    else if (key == "workers") s.workers = static_cast<int>(to_int(v, k));
    else throw ConfigError("unknown key '" + k + "'");
}

}  // namespace

void RunConfig::validate() const {
    problem.validate();
    if (forward.n < 2 || forward.m < 2 || asymptote.n < 2 || asymptote.m < 2 || inverse.n < 2 || inverse.m < 2)
        throw ConfigError("grid sizes must be at least 2");
    if (asymptote.nt < 1 || inverse.front_nt < 1) throw ConfigError("nt must be at least 1");
    if (inverse.refine < 1) throw ConfigError("inverse.refine must be at least 1");
    if (!(inverse.delta >= 0)) throw ConfigError("inverse.delta must be non-negative");
    if (!(inverse.smoothing.tolerance > 0 && inverse.smoothing.tolerance < 1))
        throw ConfigError("inverse.smoothing_tolerance must lie in (0, 1)");
    for (double d : study.delta)
        if (!(d >= 0)) throw ConfigError("study.delta entries must be non-negative");
    for (double m : study.mu)
        if (!(m > 0)) throw ConfigError("study.mu entries must be positive");
    for (int g : study.grid)
        if (g < 2) throw ConfigError("study.grid entries must be at least 2");
    if (study.seeds.empty()) throw ConfigError("study.seeds must not be empty");
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.preset = name;
    if (name == "example1") c.problem = preset_example1();
    else if (name == "example2") c.problem = preset_example2();
    else throw ConfigError("unknown preset '" + name + "' (expected example1 or example2)");
    c.forward.snapshot_times = {c.problem.t0};
    c.forward.t_end = c.problem.t0;
    c.inverse.n = c.inverse.m = 50;
    c.inverse.delta = 0.01;
    return c;
}

RunConfig apply_config_text(RunConfig c, const std::string& text, const std::string& origin) {
    // '#' comments are accepted alongside the INI ';' form.
    std::stringstream in(text), cleaned;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        cleaned << (t.rfind("#", 0) == 0 ? std::string() : line) << '\n';
    }
    ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(cleaned, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        std::ostringstream os;
        os << origin << ":" << e.line() << ": " << e.message();
        throw ConfigError(os.str());
    }
    static const std::set<std::string> sections{"problem", "forward", "asymptote", "inverse", "study"};
    for (const auto& [section, body] : tree) {
        if (!sections.count(section)) throw ConfigError(origin + ": unknown section or top-level key '" + section + "'");
        for (const auto& [key, node] : body) {
            std::string v = trim(node.get_value<std::string>());
            try {
                if (section == "problem") apply_problem(c.problem, key, v);
                else if (section == "forward") apply_forward(c.forward, key, v);
                else if (section == "asymptote") apply_asymptote(c.asymptote, key, v);
                else if (section == "inverse") apply_inverse(c.inverse, key, v);
                else apply_study(c.study, key, v);
            } catch (const ConfigError& e) {
                throw ConfigError(origin + ": " + e.what());
            }
        }
    }
    return c;
}

RunConfig load_config(const std::string& path, const std::string& preset) {
    RunConfig base;
    if (!preset.empty()) base = preset_config(preset);
    if (path.empty()) {
        if (preset.empty()) throw ConfigError("either --config or --preset is required");
        base.validate();
        return base;
    }
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    RunConfig c = apply_config_text(base, ss.str(), path);
    c.validate();
    return c;
}

nlohmann::json to_json(const RunConfig& c) {
    using nlohmann::json;
    const ProblemSpec& p = c.problem;
    json j;
    j["preset"] = c.preset;
    j["problem"] = {{"mu", p.mu},
                    {"k", p.k},
                    {"x0", p.x0},
                    {"x1", p.x1},
                    {"a", p.a},
                    {"T", p.T},
                    {"u_minus_a", p.u_minus_a.source()},
                    {"u_plus_a", p.u_plus_a.source()},
                    {"f", p.f.source()},
                    {"h0_star", p.h0_star},
                    {"t0", p.t0},
                    {"source_extension", to_string(p.extension)}};
    j["forward"] = {{"n", c.forward.n},
                    {"m", c.forward.m},
                    {"cfl", c.forward.cfl},
                    {"snapshot_times", c.forward.snapshot_times},
                    {"t_end", c.forward.t_end},
                    {"initial", to_string(c.forward.initial)}};
    j["asymptote"] = {{"n", c.asymptote.n}, {"m", c.asymptote.m}, {"nt", c.asymptote.nt}, {"first_order", c.asymptote.first_order}};
    const PipelineConfig& q = c.inverse;
    j["inverse"] = {{"n", q.n},
                    {"m", q.m},
                    {"refine", q.refine},
                    {"cfl", q.cfl},
                    {"initial", to_string(q.initial)},
                    {"front_nt", q.front_nt},
                    {"delta", q.delta},
                    {"seed", q.seed},
                    {"noise", to_string(q.noise)},
                    {"mask", "global"},
                    {"gradient_measured", q.gradient_measured},
                    {"smoothing_rule", to_string(q.smoothing.rule)},
                    {"smoothing_tolerance", q.smoothing.tolerance},
                    {"smoothing_eps", q.smoothing.fixed_eps}};
    j["study"] = {{"delta", c.study.delta},
                  {"mu", c.study.mu},
                  {"grid", c.study.grid},
                  {"seeds", c.study.seeds},
                  {"mu_pipeline", c.study.mu_pipeline},
                  {"workers", c.study.workers}};
    j["rng"] = "splitmix64-counter";
    return j;
}

int effective_workers(int requested) {
    int w = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("AER_MAX_WORKERS")) {
        int c = std::atoi(cap);
        if (c > 0) w = std::min(w, c);
    }
    return std::max(1, w);
}

}  // namespace aer
