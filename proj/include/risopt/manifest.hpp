#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "risopt/version.hpp"

namespace risopt {

/// Provenance record written next to every CLI output set.
struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string command;
    std::string timestamp;
    std::vector<std::string> outputs;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json to_json(const RunManifest& m) {
    return {{"tool_version", m.tool_version}, {"config_hash", m.config_hash}, {"seed", m.seed},
            {"command", m.command},           {"timestamp", m.timestamp},     {"outputs", m.outputs}};
}

inline void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
    out << to_json(m).dump(2) << '\n';
    if (!out) throw std::runtime_error("manifest write failed: " + path.string());
}

}  // namespace risopt
