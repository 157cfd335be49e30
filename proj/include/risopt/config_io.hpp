#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "risopt/scenario.hpp"

namespace risopt {

inline constexpr int kConfigSchemaVersion = 1;

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
void read_opt(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

inline Point2D read_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(where + ": expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace detail

/// Parses a schema-v1 document; omitted optional sections keep their defaults.
inline ScenarioConfig parse_config(const nlohmann::json& doc) {
    using detail::read_opt;
    using detail::reject_unknown_keys;

    reject_unknown_keys(doc,
                        {"schema_version", "nodes", "area", "link_budget", "path_loss", "small_scale", "temporal",
                         "blockage", "ris_gain", "phase_mode", "seed"},
                        "config");

    int version = kConfigSchemaVersion;
    read_opt(doc, "schema_version", version, "config");
    if (version != kConfigSchemaVersion) {
        throw ConfigError("config.schema_version: unsupported version " + std::to_string(version));
    }

    ScenarioConfig cfg;
    if (!doc.contains("nodes")) throw ConfigError("config.nodes: required section missing");
    const auto& nodes = doc.at("nodes");
    reject_unknown_keys(nodes, {"bs", "bob", "eve", "target"}, "config.nodes");
    for (const char* name : {"bs", "bob", "eve", "target"}) {
        if (!nodes.contains(name)) throw ConfigError(std::string("config.nodes.") + name + ": required");
    }
    cfg.bs = detail::read_point(nodes.at("bs"), "config.nodes.bs");
    cfg.bob = detail::read_point(nodes.at("bob"), "config.nodes.bob");
    cfg.eve = detail::read_point(nodes.at("eve"), "config.nodes.eve");
    cfg.target = detail::read_point(nodes.at("target"), "config.nodes.target");

    if (doc.contains("area")) {
        const auto& s = doc.at("area");
        reject_unknown_keys(s, {"x_min", "x_max", "y_min", "y_max"}, "config.area");
        read_opt(s, "x_min", cfg.area.x_min, "config.area");
        read_opt(s, "x_max", cfg.area.x_max, "config.area");
        read_opt(s, "y_min", cfg.area.y_min, "config.area");
        read_opt(s, "y_max", cfg.area.y_max, "config.area");
    }
    if (doc.contains("link_budget")) {
        const auto& s = doc.at("link_budget");
        reject_unknown_keys(s, {"transmit_power_dbm", "noise_power_dbm"}, "config.link_budget");
        read_opt(s, "transmit_power_dbm", cfg.link_budget.transmit_power_dbm, "config.link_budget");
        read_opt(s, "noise_power_dbm", cfg.link_budget.noise_power_dbm, "config.link_budget");
    }
    if (doc.contains("path_loss")) {
        const auto& s = doc.at("path_loss");
        reject_unknown_keys(s, {"pl_1m_db", "exponent", "shadow_sigma_db"}, "config.path_loss");
        read_opt(s, "pl_1m_db", cfg.path_loss.pl_1m_db, "config.path_loss");
        read_opt(s, "exponent", cfg.path_loss.exponent, "config.path_loss");
        read_opt(s, "shadow_sigma_db", cfg.path_loss.shadow_sigma_db, "config.path_loss");
    }
    if (doc.contains("small_scale")) {
        const auto& s = doc.at("small_scale");
        reject_unknown_keys(s, {"num_taps", "decay_factor", "rician_k_db"}, "config.small_scale");
        read_opt(s, "num_taps", cfg.small_scale.num_taps, "config.small_scale");
        read_opt(s, "decay_factor", cfg.small_scale.decay_factor, "config.small_scale");
        read_opt(s, "rician_k_db", cfg.small_scale.rician_k_db, "config.small_scale");
    }
    if (doc.contains("temporal")) {
        const auto& s = doc.at("temporal");
        reject_unknown_keys(s, {"rho", "num_frames"}, "config.temporal");
        read_opt(s, "rho", cfg.temporal.rho, "config.temporal");
        read_opt(s, "num_frames", cfg.temporal.num_frames, "config.temporal");
    }
    if (doc.contains("blockage")) {
        const auto& s = doc.at("blockage");
        reject_unknown_keys(s, {"bs_bob", "bs_eve", "bs_target", "loss_db"}, "config.blockage");
        read_opt(s, "bs_bob", cfg.blockage.bs_bob, "config.blockage");
        read_opt(s, "bs_eve", cfg.blockage.bs_eve, "config.blockage");
        read_opt(s, "bs_target", cfg.blockage.bs_target, "config.blockage");
        read_opt(s, "loss_db", cfg.blockage.loss_db, "config.blockage");
    }
    if (doc.contains("ris_gain")) {
        const auto& s = doc.at("ris_gain");
        reject_unknown_keys(s, {"element_efficiency", "orientation_exponent"}, "config.ris_gain");
        read_opt(s, "element_efficiency", cfg.ris_gain.element_efficiency, "config.ris_gain");
        read_opt(s, "orientation_exponent", cfg.ris_gain.orientation_exponent, "config.ris_gain");
    }
    if (doc.contains("phase_mode")) {
        std::string mode;
        read_opt(doc, "phase_mode", mode, "config");
        if (mode == "coherent") {
            cfg.phase_mode = PhaseMode::coherent;
        } else if (mode == "random") {
            cfg.phase_mode = PhaseMode::random;
        } else {
            throw ConfigError("config.phase_mode: expected 'coherent' or 'random', got '" + mode + "'");
        }
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_integer()) throw ConfigError("config.seed: expected an unsigned integer");
        if (doc.at("seed").is_number_unsigned()) {
            cfg.master_seed = doc.at("seed").get<std::uint64_t>();
        } else {
            const auto v = doc.at("seed").get<std::int64_t>();
            if (v < 0) throw ConfigError("config.seed: must be non-negative");
            cfg.master_seed = static_cast<std::uint64_t>(v);
        }
    }

    validate(cfg);
    return cfg;
}

inline nlohmann::json to_json(const ScenarioConfig& cfg) {
    using nlohmann::json;
    const auto point = [](const Point2D& p) { return json::array({p.x, p.y}); };
    json doc;
    doc["schema_version"] = kConfigSchemaVersion;
    doc["nodes"] = {{"bs", point(cfg.bs)}, {"bob", point(cfg.bob)}, {"eve", point(cfg.eve)},
                    {"target", point(cfg.target)}};
    doc["area"] = {{"x_min", cfg.area.x_min}, {"x_max", cfg.area.x_max}, {"y_min", cfg.area.y_min},
                   {"y_max", cfg.area.y_max}};
    doc["link_budget"] = {{"transmit_power_dbm", cfg.link_budget.transmit_power_dbm},
                          {"noise_power_dbm", cfg.link_budget.noise_power_dbm}};
    doc["path_loss"] = {{"pl_1m_db", cfg.path_loss.pl_1m_db},
                        {"exponent", cfg.path_loss.exponent},
                        {"shadow_sigma_db", cfg.path_loss.shadow_sigma_db}};
    doc["small_scale"] = {{"num_taps", cfg.small_scale.num_taps},
                          {"decay_factor", cfg.small_scale.decay_factor},
                          {"rician_k_db", cfg.small_scale.rician_k_db}};
    doc["temporal"] = {{"rho", cfg.temporal.rho}, {"num_frames", cfg.temporal.num_frames}};
    doc["blockage"] = {{"bs_bob", cfg.blockage.bs_bob},
                       {"bs_eve", cfg.blockage.bs_eve},
                       {"bs_target", cfg.blockage.bs_target},
                       {"loss_db", cfg.blockage.loss_db}};
    doc["ris_gain"] = {{"element_efficiency", cfg.ris_gain.element_efficiency},
                       {"orientation_exponent", cfg.ris_gain.orientation_exponent}};
    doc["phase_mode"] = to_string(cfg.phase_mode);
    doc["seed"] = cfg.master_seed;
    return doc;
}

inline ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

inline void save_config(const ScenarioConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path.string());
    out << to_json(cfg).dump(2) << '\n';
    if (!out) throw ConfigError("write failed: " + path.string());
}

/// FNV-1a over the canonical JSON dump; identifies a configuration in output provenance.
inline std::string config_hash(const ScenarioConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : to_json(cfg).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace risopt
