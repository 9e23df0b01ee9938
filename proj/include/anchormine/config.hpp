#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "anchormine/d4.hpp"
#include "anchormine/errors.hpp"
#include "anchormine/metrics.hpp"
#include "anchormine/pool.hpp"
#include "anchormine/select.hpp"
#include "anchormine/track.hpp"

namespace anchormine {

// Every tunable of the pipeline, with the documented defaults. Loaded from a
// key = value file (see parse_config_text); unknown keys are rejected.
struct PipelineConfig {
    std::uint64_t seed = 0;
    std::vector<D4> transforms{kD4All.begin(), kD4All.end()};
    CropParams crop;                      // pool.patch_side = 16, pool.pad_ratio = 0.1
    SelectionParams select;               // k = 3, theta = 0.5, delta = 15
    TrackerParams tracker;                // tau_track = 0.6, tau_mem = 0.8, capacity = 4
    std::optional<double> boundary_tol;   // unset: ceil(0.8% of image diagonal)

    EvalParams eval_params() const { return EvalParams{boundary_tol}; }

    TrackerParams tracker_params() const {
        TrackerParams p = tracker;
        p.crop = crop;
        return p;
    }

    void validate() const {
        if (crop.patch_side < 2) throw ConfigError("pool.patch_side must be >= 2");
        if (crop.pad_ratio < 0) throw ConfigError("pool.pad_ratio must be >= 0");
        if (select.k < 0) throw ConfigError("select.k must be >= 0");
        if (select.delta < 0) throw ConfigError("select.delta must be >= 0");
        if (select.theta_min < -1 || select.theta_min > 1)
            throw ConfigError("select.theta must be in [-1, 1]");
        if (tracker.mem_capacity < 0) throw ConfigError("tracker.mem_capacity must be >= 0");
        if (tracker.tau_mem < tracker.tau_track)
            throw ConfigError("tracker.tau_mem must be >= tracker.tau_track");
        if (boundary_tol && *boundary_tol < 0)
            throw ConfigError("metrics.boundary_tol must be >= 0");
        if (transforms.empty()) throw ConfigError("pool.transforms must not be empty");
    }
};

inline std::vector<D4> parse_transform_list(const std::string& text) {
    if (text == "d4" || text == "D4")
        return std::vector<D4>{kD4All.begin(), kD4All.end()};
    std::vector<D4> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token.erase(0, token.find_first_not_of(" \t"));
        token.erase(token.find_last_not_of(" \t") + 1);
        if (token.empty()) continue;
        const auto t = d4_from_name(token);
        if (!t) throw ConfigError("unknown transform '" + token + "'");
        out.push_back(*t);
    }
    if (out.empty()) throw ConfigError("empty transform list");
    return out;
}

inline std::string transform_list_to_string(const std::vector<D4>& ts) {
    if (ts.size() == kD4All.size()) return "d4";
    std::string out;
    for (const D4 t : ts) {
        if (!out.empty()) out += ",";
        out += std::string(d4_name(t));
    }
    return out;
}

inline void apply_config_key(PipelineConfig& cfg, const std::string& key,
                             const std::string& value) {
    auto as_int = [&](const char* what) {
        try {
            size_t pos = 0;
            const long long v = std::stoll(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": expected integer, got '" + value + "'");
        }
    };
    auto as_double = [&](const char* what) {
        try {
            size_t pos = 0;
            const double v = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(std::string(what) + ": expected number, got '" + value + "'");
        }
    };

    if (key == "seed")
        cfg.seed = std::uint64_t(as_int("seed"));
    else if (key == "pool.transforms")
        cfg.transforms = parse_transform_list(value);
    else if (key == "pool.patch_side")
        cfg.crop.patch_side = int(as_int("pool.patch_side"));
    else if (key == "pool.pad_ratio")
        cfg.crop.pad_ratio = as_double("pool.pad_ratio");
    else if (key == "select.k")
        cfg.select.k = int(as_int("select.k"));
    else if (key == "select.theta")
        cfg.select.theta_min = as_double("select.theta");
    else if (key == "select.delta")
        cfg.select.delta = int(as_int("select.delta"));
    else if (key == "tracker.tau_track")
        cfg.tracker.tau_track = as_double("tracker.tau_track");
    else if (key == "tracker.tau_mem")
        cfg.tracker.tau_mem = as_double("tracker.tau_mem");
    else if (key == "tracker.mem_capacity")
        cfg.tracker.mem_capacity = int(as_int("tracker.mem_capacity"));
    else if (key == "metrics.boundary_tol")
        cfg.boundary_tol = value == "auto" ? std::optional<double>{}
                                           : std::optional<double>{as_double("metrics.boundary_tol")};
    else
        throw ConfigError("unknown key '" + key + "'");
}

// Line format: key = value. Blank lines and lines starting with '#' are
// ignored. Unknown keys are an error.
inline PipelineConfig parse_config_text(const std::string& text,
                                        PipelineConfig base = PipelineConfig{}) {
    std::istringstream in(text);
    std::string line;
    long long line_num = 0;
    while (std::getline(in, line)) {
        ++line_num;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_num) + ": expected 'key = value'");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_num) + ": empty key");
        try {
            apply_config_key(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_num) + ": " + e.what());
        }
    }
    base.validate();
    return base;
}

inline PipelineConfig load_config_file(const std::filesystem::path& path,
                                       PipelineConfig base = PipelineConfig{}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

// Full echo for run manifests.
inline nlohmann::json config_to_json(const PipelineConfig& cfg) {
    return nlohmann::json{
        {"seed", cfg.seed},
        {"pool",
         {{"transforms", transform_list_to_string(cfg.transforms)},
          {"patch_side", cfg.crop.patch_side},
          {"pad_ratio", cfg.crop.pad_ratio}}},
        {"select",
         {{"k", cfg.select.k}, {"theta", cfg.select.theta_min}, {"delta", cfg.select.delta}}},
        {"tracker",
         {{"tau_track", cfg.tracker.tau_track},
          {"tau_mem", cfg.tracker.tau_mem},
          {"mem_capacity", cfg.tracker.mem_capacity}}},
        {"metrics",
         {{"boundary_tol",
           cfg.boundary_tol ? nlohmann::json(*cfg.boundary_tol) : nlohmann::json("auto")}}}};
}

}  // namespace anchormine
