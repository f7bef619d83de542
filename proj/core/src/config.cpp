#include "iftsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iftsim/csv.hpp"
#include "iftsim/error.hpp"

namespace ift {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

TomlValue parse_value(const std::string& raw, int line_no) {
    std::string s = trim(raw);
    if (s.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value");
    if (s == "true") return TomlValue{true};
    if (s == "false") return TomlValue{false};
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
        return TomlValue{s.substr(1, s.size() - 2)};
    }
    if (s.front() == '[') {
        if (s.back() != ']')
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
        std::string inner = s.substr(1, s.size() - 2);
        std::vector<double> nums;
        std::vector<std::string> strs;
        bool is_str = false;
        std::string item;
        std::istringstream in(inner);
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            if (item.front() == '"') {
                is_str = true;
                strs.push_back(item.substr(1, item.size() - 2));
            } else {
                char* end = nullptr;
                nums.push_back(std::strtod(item.c_str(), &end));
                if (end == item.c_str())
                    throw ConfigError("line " + std::to_string(line_no) +
                                      ": bad array element '" + item + "'");
            }
        }
        if (is_str) return TomlValue{strs};
        return TomlValue{nums};
    }
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size())
        throw ConfigError("line " + std::to_string(line_no) + ": bad value '" + s + "'");
    return TomlValue{v};
}

} // namespace

TomlFile parse_toml(const std::string& text) {
    TomlFile file;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            file[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (file[section].count(key))
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key +
                              "'");
        file[section][key] = parse_value(line.substr(eq + 1), line_no);
    }
    return file;
}

TomlFile parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_toml(buf.str());
}

namespace {

class SectionReader {
public:
    SectionReader(const TomlFile& file, const std::string& name) : name_(name) {
        auto it = file.find(name);
        if (it != file.end()) section_ = &it->second;
    }

    double number(const std::string& key, double fallback) {
        mark(key);
        if (!section_ || !section_->count(key)) return fallback;
        const auto& v = section_->at(key).v;
        if (!std::holds_alternative<double>(v))
            throw ConfigError("[" + name_ + "] " + key + ": expected a number");
        return std::get<double>(v);
    }
    int integer(const std::string& key, int fallback) {
        double v = number(key, fallback);
        if (v != static_cast<int>(v))
            throw ConfigError("[" + name_ + "] " + key + ": expected an integer");
        return static_cast<int>(v);
    }
    bool boolean(const std::string& key, bool fallback) {
        mark(key);
        if (!section_ || !section_->count(key)) return fallback;
        const auto& v = section_->at(key).v;
        if (!std::holds_alternative<bool>(v))
            throw ConfigError("[" + name_ + "] " + key + ": expected a boolean");
        return std::get<bool>(v);
    }
    std::string text(const std::string& key, const std::string& fallback) {
        mark(key);
        if (!section_ || !section_->count(key)) return fallback;
        const auto& v = section_->at(key).v;
        if (!std::holds_alternative<std::string>(v))
            throw ConfigError("[" + name_ + "] " + key + ": expected a string");
        return std::get<std::string>(v);
    }
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        mark(key);
        if (!section_ || !section_->count(key)) return fallback;
        const auto& v = section_->at(key).v;
        if (std::holds_alternative<std::vector<double>>(v))
            return std::get<std::vector<double>>(v);
        if (std::holds_alternative<double>(v)) return {std::get<double>(v)};
        throw ConfigError("[" + name_ + "] " + key + ": expected a number array");
    }

    void finish() const {
        if (!section_) return;
        for (const auto& [key, value] : *section_) {
            if (!std::count(seen_.begin(), seen_.end(), key))
                throw ConfigError("[" + name_ + "] unknown key '" + key + "'");
        }
    }

private:
    void mark(const std::string& key) { seen_.push_back(key); }
    std::string name_;
    const TomlSection* section_ = nullptr;
    std::vector<std::string> seen_;
};

} // namespace

RunConfig config_from_toml(const TomlFile& toml) {
    static const std::vector<std::string> known = {"model",  "wavepacket", "adapt",
                                                   "scatter", "noise",     "analysis",
                                                   "compare", "output"};
    for (const auto& [section, _] : toml) {
        if (!std::count(known.begin(), known.end(), section))
            throw ConfigError("unknown config section [" + section + "]");
    }
    RunConfig cfg;
    {
        SectionReader r(toml, "model");
        cfg.model.L = r.integer("L", cfg.model.L);
        cfg.model.g_x = r.number("g_x", cfg.model.g_x);
        cfg.model.g_z = r.number("g_z", cfg.model.g_z);
        std::string b = r.text("boundary", "PBC");
        if (b == "PBC")
            cfg.model.boundary = Boundary::PBC;
        else if (b == "OBC")
            cfg.model.boundary = Boundary::OBC;
        else
            throw ConfigError("[model] boundary must be PBC or OBC");
        r.finish();
    }
    {
        SectionReader r(toml, "wavepacket");
        cfg.k0_over_pi = r.number("k0_over_pi", cfg.k0_over_pi);
        cfg.sigma = r.number("sigma", cfg.sigma);
        cfg.x0 = r.number("x0", cfg.x0);
        cfg.d = r.integer("d", cfg.d);
        cfg.construction = construction_from_name(r.text("construction", "linear"));
        cfg.delta = r.number("delta", cfg.delta);
        r.finish();
    }
    {
        SectionReader r(toml, "adapt");
        cfg.pool = pool_from_name(r.text("pool", "O3"));
        cfg.adapt_steps = r.integer("steps", cfg.adapt_steps);
        std::string obj = r.text("objective", "total");
        if (obj == "total")
            cfg.objective = AdaptObjective::TotalEnergy;
        else if (obj == "windowed")
            cfg.objective = AdaptObjective::WindowedEnergy;
        else
            throw ConfigError("[adapt] objective must be total or windowed");
        cfg.window_pad = r.integer("window_pad", cfg.window_pad);
        cfg.optimizer_max_evals = r.integer("optimizer_max_evals", cfg.optimizer_max_evals);
        cfg.optimizer_tol = r.number("optimizer_tol", cfg.optimizer_tol);
        cfg.ansatz_file = r.text("ansatz_file", cfg.ansatz_file);
        r.finish();
    }
    {
        SectionReader r(toml, "scatter");
        cfg.separation = r.integer("separation", cfg.separation);
        cfg.dt = r.number("dt", cfg.dt);
        cfg.n_trotter = r.integer("n_T", cfg.n_trotter);
        cfg.measure_times = r.numbers("measure_times", cfg.measure_times);
        cfg.exact_evolution = r.boolean("exact_evolution", cfg.exact_evolution);
        r.finish();
    }
    {
        SectionReader r(toml, "noise");
        cfg.p_err = r.number("p_err", cfg.p_err);
        cfg.twirling = r.boolean("twirling", cfg.twirling);
        cfg.shots = r.integer("shots", cfg.shots);
        cfg.seed = static_cast<uint64_t>(r.number("seed", static_cast<double>(cfg.seed)));
        cfg.coherent_rzz_overrotation =
            r.number("coherent_rzz_overrotation", cfg.coherent_rzz_overrotation);
        r.finish();
    }
    {
        SectionReader r(toml, "analysis");
        cfg.cutoff_min = r.number("cutoff_min", cfg.cutoff_min);
        cfg.cutoff_max = r.number("cutoff_max", cfg.cutoff_max);
        cfg.cutoff_step = r.number("cutoff_step", cfg.cutoff_step);
        cfg.bootstrap_n = r.integer("bootstrap_n", cfg.bootstrap_n);
        r.finish();
    }
    {
        SectionReader r(toml, "compare");
        cfg.computed_csv = r.text("computed", cfg.computed_csv);
        cfg.reference_csv = r.text("reference", cfg.reference_csv);
        cfg.compare_column = r.text("column", cfg.compare_column);
        cfg.tolerance = r.number("tolerance", cfg.tolerance);
        r.finish();
    }
    {
        SectionReader r(toml, "output");
        cfg.out_dir = r.text("directory", cfg.out_dir);
        cfg.threads = r.integer("threads", cfg.threads);
        cfg.verbose = r.boolean("verbose", cfg.verbose);
        r.finish();
    }
    if (cfg.model.L > 24)
        throw ConfigError("L = " + std::to_string(cfg.model.L) +
                          " exceeds the dense-statevector ceiling of 24 qubits");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    return config_from_toml(parse_toml_file(path));
}

std::string manifest_json(const RunConfig& c, const std::string& subcommand,
                          const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["artifact"] = {{"name", "iftsim"}, {"version", "0.1.0"}};
    j["subcommand"] = subcommand;
    j["outputs"] = outputs;
    j["config"]["model"] = {{"L", c.model.L},
                            {"g_x", c.model.g_x},
                            {"g_z", c.model.g_z},
                            {"boundary", c.model.boundary == Boundary::PBC ? "PBC" : "OBC"}};
    j["config"]["wavepacket"] = {{"k0_over_pi", c.k0_over_pi}, {"sigma", c.sigma},
                                 {"x0", c.x0},                 {"d", c.d},
                                 {"construction", construction_name(c.construction)},
                                 {"delta", c.delta}};
    j["config"]["adapt"] = {{"pool", pool_name(c.pool)},
                            {"steps", c.adapt_steps},
                            {"objective",
                             c.objective == AdaptObjective::TotalEnergy ? "total" : "windowed"},
                            {"window_pad", c.window_pad},
                            {"optimizer_max_evals", c.optimizer_max_evals},
                            {"optimizer_tol", c.optimizer_tol},
                            {"ansatz_file", c.ansatz_file}};
    j["config"]["scatter"] = {{"separation", c.separation},
                              {"dt", c.dt},
                              {"n_T", c.n_trotter},
                              {"measure_times", c.measure_times},
                              {"exact_evolution", c.exact_evolution}};
    j["config"]["noise"] = {{"p_err", c.p_err},
                            {"twirling", c.twirling},
                            {"shots", c.shots},
                            {"seed", c.seed},
                            {"coherent_rzz_overrotation", c.coherent_rzz_overrotation}};
    j["config"]["analysis"] = {{"cutoff_min", c.cutoff_min},
                               {"cutoff_max", c.cutoff_max},
                               {"cutoff_step", c.cutoff_step},
                               {"bootstrap_n", c.bootstrap_n}};
    j["config"]["compare"] = {{"computed", c.computed_csv},
                              {"reference", c.reference_csv},
                              {"column", c.compare_column},
                              {"tolerance", c.tolerance}};
    j["config"]["output"] = {{"directory", c.out_dir},
                             {"threads", c.threads},
                             {"verbose", c.verbose}};
    return j.dump(2);
}

} // namespace ift
