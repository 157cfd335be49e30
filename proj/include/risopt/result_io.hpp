#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "risopt/heatmap.hpp"
#include "risopt/optimizer.hpp"

namespace risopt {

inline constexpr int kResultSchemaVersion = 1;

class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kRepresentativeNames[] = {"best_snr_b", "best_security_gap", "best_sensing_gain",
                                                      "balanced"};

inline std::size_t& representative_slot(Representatives& rep, std::size_t which) {
    switch (which) {
        case 0: return rep.best_snr_b;
        case 1: return rep.best_security_gap;
        case 2: return rep.best_sensing_gain;
        default: return rep.balanced;
    }
}

inline std::size_t representative_index(const Representatives& rep, std::size_t which) {
    switch (which) {
        case 0: return rep.best_snr_b;
        case 1: return rep.best_security_gap;
        case 2: return rep.best_sensing_gain;
        default: return rep.balanced;
    }
}

inline nlohmann::json to_json(const EvaluatedCandidate& c) {
    const auto& m = c.metrics;
    return {{"index", c.index},
            {"round", c.round},
            {"x", c.ris.position.x},
            {"y", c.ris.position.y},
            {"theta", c.ris.orientation},
            {"n", c.ris.num_elements},
            {"alpha", c.ris.alpha},
            {"snr_b_db", m.snr_b_db},
            {"snr_e_db", m.snr_e_db},
            {"snr_t_total_db", m.snr_t_total_db},
            {"snr_t_direct_db", m.snr_t_direct_db},
            {"delta_snr_b_db", m.delta_snr_b_db},
            {"security_gap_db", m.security_gap_db},
            {"sensing_gain_db", m.sensing_gain_db},
            {"normalized", c.objective.normalized},
            {"scalar", c.objective.scalar}};
}

inline EvaluatedCandidate candidate_from_json(const nlohmann::json& j) {
    EvaluatedCandidate c;
    c.index = j.at("index").get<std::size_t>();
    c.round = j.at("round").get<int>();
    c.ris.position = {j.at("x").get<double>(), j.at("y").get<double>()};
    c.ris.orientation = j.at("theta").get<double>();
    c.ris.num_elements = j.at("n").get<int>();
    c.ris.alpha = j.at("alpha").get<double>();
    auto& m = c.metrics;
    m.snr_b_db = j.at("snr_b_db").get<double>();
    m.snr_e_db = j.at("snr_e_db").get<double>();
    m.snr_t_total_db = j.at("snr_t_total_db").get<double>();
    m.snr_t_direct_db = j.at("snr_t_direct_db").get<double>();
    m.delta_snr_b_db = j.at("delta_snr_b_db").get<double>();
    m.security_gap_db = j.at("security_gap_db").get<double>();
    m.sensing_gain_db = j.at("sensing_gain_db").get<double>();
    c.objective.raw = objective_triple(m);
    c.objective.normalized = j.at("normalized").get<ObjectiveTriple>();
    c.objective.scalar = j.at("scalar").get<double>();
    return c;
}

inline nlohmann::json to_json(const OptimizationResult& result, const Provenance& provenance) {
    nlohmann::json doc;
    doc["result_schema"] = kResultSchemaVersion;
    doc["tool_version"] = provenance.tool_version;
    doc["config_hash"] = provenance.config_hash;
    doc["seed"] = provenance.seed;
    doc["rounds_executed"] = result.rounds_executed;
    doc["converged"] = result.converged;
    doc["skipped_candidates"] = result.skipped_candidates;
    doc["round_best_scalar"] = result.round_best_scalar;
    nlohmann::json reps = nlohmann::json::object();
    for (std::size_t k = 0; k < 4; ++k) {
        reps[kRepresentativeNames[k]] = to_json(result.candidates.at(representative_index(result.representatives, k)));
    }
    doc["representatives"] = std::move(reps);
    nlohmann::json all = nlohmann::json::array();
    for (const auto& c : result.candidates) all.push_back(to_json(c));
    doc["candidates"] = std::move(all);
    return doc;
}

/// Throws IntegrityError describing the first violated result invariant.
inline void check_integrity(const OptimizationResult& r) {
    const auto fail = [](const std::string& what) { throw IntegrityError("result integrity: " + what); };
    if (r.candidates.empty()) fail("empty candidate list");
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        const auto& c = r.candidates[i];
        const auto id = "candidate " + std::to_string(i);
        if (c.index != i) fail(id + " has index " + std::to_string(c.index));
        if (c.metrics.security_gap_db != c.metrics.snr_b_db - c.metrics.snr_e_db) fail(id + " security gap identity");
        if (c.metrics.sensing_gain_db != c.metrics.snr_t_total_db - c.metrics.snr_t_direct_db) {
            fail(id + " sensing gain identity");
        }
        for (const double v : c.objective.normalized) {
            if (!(v >= 0.0 && v <= 1.0)) fail(id + " normalized component outside [0, 1]");
        }
        const auto& n = c.objective.normalized;
        if (c.objective.scalar != n[0] + n[1] + n[2]) fail(id + " scalar is not the sum of its components");
    }
    for (std::size_t k = 0; k < 4; ++k) {
        if (representative_index(r.representatives, k) >= r.candidates.size()) {
            fail(std::string(kRepresentativeNames[k]) + " is not a member of the evaluated set");
        }
    }
    const auto& bal = r.candidates[r.representatives.balanced];
    const auto& snr = r.candidates[r.representatives.best_snr_b];
    const auto& gap = r.candidates[r.representatives.best_security_gap];
    const auto& sens = r.candidates[r.representatives.best_sensing_gain];
    for (const auto& c : r.candidates) {
        if (c.objective.scalar < bal.objective.scalar) {
            fail("balanced scalar exceeds that of candidate " + std::to_string(c.index));
        }
        if (c.metrics.snr_b_db > snr.metrics.snr_b_db) fail("best_snr_b is not the SNR_B maximum");
        if (c.metrics.security_gap_db > gap.metrics.security_gap_db) fail("best_security_gap is not the maximum");
        if (c.metrics.sensing_gain_db > sens.metrics.sensing_gain_db) fail("best_sensing_gain is not the maximum");
    }
    for (std::size_t i = 1; i < r.round_best_scalar.size(); ++i) {
        if (r.round_best_scalar[i] > r.round_best_scalar[i - 1]) fail("best scalar increased across rounds");
    }
}

/// Parses a result document; representatives must match the candidates they name.
inline OptimizationResult parse_result(const nlohmann::json& doc) {
    OptimizationResult r;
    try {
        if (doc.at("result_schema").get<int>() != kResultSchemaVersion) {
            throw IntegrityError("result integrity: unsupported result_schema");
        }
        r.rounds_executed = doc.at("rounds_executed").get<int>();
        r.converged = doc.at("converged").get<bool>();
        r.skipped_candidates = doc.value("skipped_candidates", std::size_t{0});
        r.round_best_scalar = doc.at("round_best_scalar").get<std::vector<double>>();
        for (const auto& j : doc.at("candidates")) r.candidates.push_back(candidate_from_json(j));
        const auto& reps = doc.at("representatives");
        if (reps.size() != 4) throw IntegrityError("result integrity: expected exactly four representatives");
        for (std::size_t k = 0; k < 4; ++k) {
            const auto rep = candidate_from_json(reps.at(kRepresentativeNames[k]));
            if (rep.index >= r.candidates.size()) {
                throw IntegrityError(std::string("result integrity: ") + kRepresentativeNames[k] +
                                     " is not a member of the evaluated set");
            }
            const auto& member = r.candidates[rep.index];
            if (!(member.ris == rep.ris && member.metrics == rep.metrics && member.objective == rep.objective)) {
                throw IntegrityError(std::string("result integrity: ") + kRepresentativeNames[k] +
                                     " does not match candidate " + std::to_string(rep.index));
            }
            representative_slot(r.representatives, k) = rep.index;
        }
    } catch (const nlohmann::json::exception& e) {
        throw IntegrityError(std::string("result integrity: malformed document: ") + e.what());
    }
    return r;
}

inline OptimizationResult load_result(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IntegrityError("cannot open result file: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw IntegrityError("result integrity: parse error: " + std::string(e.what()));
    }
    return parse_result(doc);
}

/// Representatives table: position, theta, N, alpha, SNR_B, SNR_T, security gap.
inline std::string format_table(const OptimizationResult& r) {
    static constexpr const char* labels[] = {"Best \xce\x94SNR_B", "Best security gap", "Best sensing gain",
                                             "Balanced"};
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-19s %-16s %9s %5s %6s %8s %8s %13s\n", "Solutions", "RIS position",
                  "theta/rad", "N", "alpha", "SNR_B", "SNR_T", "security gap");
    out += line;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& c = r.candidates.at(representative_index(r.representatives, k));
        char position[64];
        std::snprintf(position, sizeof position, "(%.1f,%.1f)", c.ris.position.x, c.ris.position.y);
        // "Best ΔSNR_B" carries a two-byte UTF-8 glyph; pad it by one so columns line up.
        std::snprintf(line, sizeof line, k == 0 ? "%-20s %-16s %9.3f %5d %6.2f %8.2f %8.2f %13.2f\n"
                                                : "%-19s %-16s %9.3f %5d %6.2f %8.2f %8.2f %13.2f\n",
                      labels[k], position, c.ris.orientation, c.ris.num_elements, c.ris.alpha, c.metrics.snr_b_db,
                      c.metrics.snr_t_total_db, c.metrics.security_gap_db);
        out += line;
    }
    return out;
}

}  // namespace risopt
