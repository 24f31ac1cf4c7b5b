#include "isar/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "isar/errors.hpp"

namespace isar {

namespace {
std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}
}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("ConfigFile: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw IoError("ConfigFile: malformed section header at line " +
                              std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections_[section];
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError("ConfigFile: expected key = value at line " +
                          std::to_string(line_no));
        cfg.sections_[section].emplace_back(trim(line.substr(0, eq)),
                                            trim(line.substr(eq + 1)));
    }
    return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return false;
    for (const auto& [k, v] : it->second)
        if (k == key) return true;
    return false;
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    auto it = sections_.find(section);
    if (it == sections_.end()) return fallback;
    for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit)
        if (rit->first == key) return rit->second;
    return fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stod(get(section, key, ""));
    } catch (const std::exception&) {
        throw IoError("ConfigFile: bad numeric value for " + section + "." + key);
    }
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stoi(get(section, key, ""));
    } catch (const std::exception&) {
        throw IoError("ConfigFile: bad integer value for " + section + "." + key);
    }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get(section, key, "");
    if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "off" || v == "0" || v == "no") return false;
    throw IoError("ConfigFile: bad boolean value for " + section + "." + key);
}

std::vector<std::string> ConfigFile::get_all(const std::string& section,
                                             const std::string& key) const {
    std::vector<std::string> out;
    auto it = sections_.find(section);
    if (it == sections_.end()) return out;
    for (const auto& [k, v] : it->second)
        if (k == key) out.push_back(v);
    return out;
}

std::vector<std::string> ConfigFile::get_list(const std::string& section,
                                              const std::string& key) const {
    std::vector<std::string> out;
    std::string value = get(section, key, "");
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

RadarParams radar_params_from_config(const ConfigFile& cfg) {
    RadarParams params;
    params.f0 = cfg.get_double("radar", "f0_hz", params.f0);
    params.delta_f = cfg.get_double("radar", "delta_f_hz", params.delta_f);
    params.num_angles = cfg.get_int("radar", "num_angles", params.num_angles);
    params.num_freqs = cfg.get_int("radar", "num_freqs", params.num_freqs);
    params.theta_span = cfg.get_double("radar", "theta_span_rad", params.theta_span);
    params.c = cfg.get_double("radar", "c", params.c);
    params.validate();
    return params;
}

Scene scene_from_config(const ConfigFile& cfg) {
    Scene scene;
    std::string preset = cfg.get("scene", "preset", "");
    if (preset == "quadcopter") {
        scene = quadcopter_scene();
    } else if (!preset.empty()) {
        throw IoError("ConfigFile: unknown scene preset '" + preset + "'");
    }
    for (const std::string& row : cfg.get_all("scene", "scatterer")) {
        std::istringstream in(row);
        Scatterer s;
        if (!(in >> s.x >> s.y >> s.sigma))
            throw IoError("ConfigFile: scatterer rows need 'x y sigma', got '" + row + "'");
        scene.scatterers.push_back(s);
    }
    scene.validate();
    return scene;
}

SolverConfig solver_config_from_config(const ConfigFile& cfg) {
    SolverConfig sc;
    sc.lambda = cfg.get_double("solver", "lambda", sc.lambda);
    sc.rho = cfg.get_double("solver", "rho", sc.rho);
    sc.max_iters = cfg.get_int("solver", "max_iters", sc.max_iters);
    sc.tol_primal = cfg.get_double("solver", "tol_primal", sc.tol_primal);
    sc.tol_dual = cfg.get_double("solver", "tol_dual", sc.tol_dual);
    sc.reweight_rounds = cfg.get_int("solver", "reweight_rounds", sc.reweight_rounds);
    sc.epsilon_scale = cfg.get_double("solver", "epsilon_scale", sc.epsilon_scale);
    sc.epsilon_floor = cfg.get_double("solver", "epsilon_floor", sc.epsilon_floor);
    sc.weighting_enabled = cfg.get_bool("solver", "weighting", sc.weighting_enabled);
    sc.validate();
    return sc;
}

BaselineConfig baseline_config_from_config(const ConfigFile& cfg) {
    BaselineConfig bc;
    bc.model_order = cfg.get_int("baselines", "model_order", bc.model_order);
    bc.music_grid = cfg.get_int("music", "grid", bc.music_grid);
    bc.cadzow_iters = cfg.get_int("cadzow", "iters", bc.cadzow_iters);
    bc.sl0_sigma_decay = cfg.get_double("sl0", "sigma_decay", bc.sl0_sigma_decay);
    bc.sl0_inner_steps = cfg.get_int("sl0", "inner_steps", bc.sl0_inner_steps);
    bc.sl0_grid_factor = cfg.get_int("sl0", "grid_factor", bc.sl0_grid_factor);
    bc.sl0_mu = cfg.get_double("sl0", "mu", bc.sl0_mu);
    bc.sl0_sigma_ratio = cfg.get_double("sl0", "sigma_ratio", bc.sl0_sigma_ratio);
    bc.validate();
    return bc;
}

Experiment experiment_from_config(const ConfigFile& cfg) {
    Experiment exp;
    exp.methods = cfg.get_list("experiment", "methods");
    for (const std::string& v : cfg.get_list("experiment", "snr_db")) {
        if (v == "inf") {
            exp.snr_grid.push_back(std::numeric_limits<double>::infinity());
        } else {
            exp.snr_grid.push_back(std::stod(v));
        }
    }
    for (const std::string& v : cfg.get_list("experiment", "samples"))
        exp.sample_grid.push_back(std::stoi(v));
    exp.trials = cfg.get_int("experiment", "trials", exp.trials);
    exp.base_seed = static_cast<std::uint64_t>(
        cfg.get_double("experiment", "base_seed", static_cast<double>(exp.base_seed)));
    exp.workers = cfg.get_int("experiment", "workers", exp.workers);
    exp.zero_pad = cfg.get_int("experiment", "zero_pad", exp.zero_pad);
    exp.timing = cfg.get_bool("experiment", "timing", exp.timing);
    exp.lambda_calibration =
        cfg.get_double("experiment", "lambda_calibration", exp.lambda_calibration);
    exp.bench_reps = cfg.get_int("experiment", "bench_reps", exp.bench_reps);
    exp.validate();
    return exp;
}

}  // namespace isar
