#ifndef ISAR_CONFIG_HPP
#define ISAR_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "isar/baselines.hpp"
#include "isar/frand.hpp"
#include "isar/harness.hpp"
#include "isar/model.hpp"

namespace isar {

/// Plain-text configuration: [section] headers, key = value lines, # comments.
/// Repeated keys (the scatterer table) keep every occurrence in file order.
class ConfigFile {
public:
    static ConfigFile load(const std::string& path);
    static ConfigFile parse(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;
    /// Comma-separated list value.
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;

private:
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections_;
};

RadarParams radar_params_from_config(const ConfigFile& cfg);
Scene scene_from_config(const ConfigFile& cfg);
SolverConfig solver_config_from_config(const ConfigFile& cfg);
BaselineConfig baseline_config_from_config(const ConfigFile& cfg);
Experiment experiment_from_config(const ConfigFile& cfg);

}  // namespace isar

#endif
